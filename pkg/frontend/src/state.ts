/**
 * UI state and its pure update functions.
 *
 * Invariants maintained here (and exercised by the tests):
 *
 * - slider bounds always mirror the service's latest answer; control values
 *   are clamped into them whenever they change;
 * - a locked broken arm freezes the theta slider;
 * - the scene never shows a configuration the service marked invalid: the
 *   visible configuration comes from the latest *valid* solve only, and an
 *   invalid solve switches the view into a diagnostic state while the last
 *   valid pose stays as a ghost;
 * - network errors raise a banner and change nothing else.
 */

import type {
  BranchLabel,
  BoundsResponse,
  ConfigurationEntry,
  SolveResponse,
  SweepResponse,
  SweepSample,
} from "./types.js";

export interface UiState {
  params: { ell: number; b: number };
  control: { thetaDeg: number; p: number; phiDeg: number };
  bounds: { pMin: number; pMax: number; thetaMaxDeg: number };
  brokenArmLocked: boolean;
  selectedBranch: BranchLabel;
  lastSolve: SolveResponse | null;
  lastValidSolve: SolveResponse | null;
  overlay: SweepResponse | null;
  banner: string | null;
}

export function initialState(): UiState {
  return {
    params: { ell: 7, b: 4 },
    control: { thetaDeg: 150, p: 5.8, phiDeg: 20 },
    bounds: { pMin: 0, pMax: 7, thetaMaxDeg: 248 },
    brokenArmLocked: false,
    selectedBranch: "++",
    lastSolve: null,
    lastValidSolve: null,
    overlay: null,
    banner: null,
  };
}

const clamp = (x: number, lo: number, hi: number) => Math.min(Math.max(x, lo), hi);

function clampControl(state: UiState): UiState {
  const { pMin, pMax, thetaMaxDeg } = state.bounds;
  return {
    ...state,
    control: {
      thetaDeg: clamp(state.control.thetaDeg, 0, thetaMaxDeg),
      p: clamp(state.control.p, pMin, pMax),
      phiDeg: clamp(state.control.phiDeg, -179.9, 179.9),
    },
  };
}

/** New plate measurements invalidate everything derived from the old ones. */
export function setParams(state: UiState, ell: number, b: number): UiState {
  return {
    ...state,
    params: { ell, b },
    lastSolve: null,
    lastValidSolve: null,
    overlay: null,
  };
}

export function applyBounds(state: UiState, bounds: BoundsResponse): UiState {
  const next = {
    ...state,
    bounds: {
      pMin: bounds.p_bounds[0],
      pMax: bounds.p_bounds[1],
      thetaMaxDeg: bounds.theta_max_deg ?? state.bounds.thetaMaxDeg,
    },
  };
  return clampControl(next);
}

export function setControl(
  state: UiState,
  patch: Partial<{ thetaDeg: number; p: number; phiDeg: number }>,
): UiState {
  if (state.brokenArmLocked && patch.thetaDeg !== undefined) {
    const { thetaDeg: _frozen, ...rest } = patch;
    patch = rest;
  }
  return clampControl({ ...state, control: { ...state.control, ...patch } });
}

export function setBranch(state: UiState, branch: BranchLabel): UiState {
  return { ...state, selectedBranch: branch };
}

export function setBrokenArmLock(state: UiState, locked: boolean): UiState {
  // unlocking discards the workspace overlay (it was for the frozen angle)
  return { ...state, brokenArmLocked: locked, overlay: locked ? state.overlay : null };
}

export function applySolve(state: UiState, response: SolveResponse): UiState {
  const next: UiState = {
    ...state,
    lastSolve: response,
    lastValidSolve: response.valid ? response : state.lastValidSolve,
    banner: null,
    bounds: {
      pMin: response.bounds.p_bounds[0],
      pMax: response.bounds.p_bounds[1],
      thetaMaxDeg: response.bounds.theta_max_deg,
    },
  };
  return clampControl(next);
}

export function applySweep(state: UiState, response: SweepResponse): UiState {
  return { ...state, overlay: response, banner: null };
}

export function applyNetworkError(state: UiState, message: string): UiState {
  // non-blocking: the last valid scene stays on screen
  return { ...state, banner: message };
}

export function clearBanner(state: UiState): UiState {
  return { ...state, banner: null };
}

/** Clicking an overlay point adopts that sample's (p, phi); theta is locked. */
export function pickCloudSample(state: UiState, sample: SweepSample): UiState {
  return clampControl({
    ...state,
    selectedBranch: sample.branch,
    control: {
      ...state.control,
      p: sample.p,
      phiDeg: (sample.phi * 180) / Math.PI,
    },
  });
}

/** Branches present in the latest valid solve (the picker greys out the rest). */
export function availableBranches(state: UiState): BranchLabel[] {
  if (!state.lastSolve || !state.lastSolve.valid) return [];
  return state.lastSolve.configurations.map((c) => c.branch);
}

/**
 * The configuration the scene may render: the selected branch of the latest
 * solve, and only when that solve is valid. Falls back to the first available
 * branch when the selected one is missing (tangent arms halve the count).
 */
export function visibleConfiguration(state: UiState): ConfigurationEntry | null {
  if (!state.lastSolve || !state.lastSolve.valid) return null;
  const entries = state.lastSolve.configurations;
  return entries.find((c) => c.branch === state.selectedBranch) ?? entries[0] ?? null;
}

/** The ghost pose shown (dimmed) while the current controls are invalid. */
export function ghostConfiguration(state: UiState): ConfigurationEntry | null {
  if (state.lastSolve && state.lastSolve.valid) return null;
  if (!state.lastValidSolve) return null;
  const entries = state.lastValidSolve.configurations;
  return entries.find((c) => c.branch === state.selectedBranch) ?? entries[0] ?? null;
}

export function invalidDiagnostics(state: UiState): string[] {
  if (!state.lastSolve || state.lastSolve.valid) return [];
  const out = [...state.lastSolve.failures];
  if (out.length === 0) out.push("configuration invalid for these controls");
  return out;
}
