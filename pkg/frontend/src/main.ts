/**
 * Wiring: sliders and pickers on the left, the 3D scene on the right.
 * Every geometric fact on screen came from the service; this file only
 * routes events, debounces requests and syncs the DOM with the state.
 */

import { JointApi } from "./api.js";
import { createLatestWins } from "./debounce.js";
import { JointScene } from "./scene.js";
import {
  applyBounds,
  applyNetworkError,
  applySolve,
  applySweep,
  availableBranches,
  ghostConfiguration,
  initialState,
  invalidDiagnostics,
  pickCloudSample,
  setBranch,
  setBrokenArmLock,
  setControl,
  setParams,
  visibleConfiguration,
  type UiState,
} from "./state.js";
import { ALL_BRANCHES, type BranchLabel, type SolveRequest } from "./types.js";

const serviceUrl =
  new URLSearchParams(window.location.search).get("service") ?? "http://127.0.0.1:8787";
const api = new JointApi(serviceUrl);

let state: UiState = initialState();

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

const ui = {
  ell: el<HTMLInputElement>("ell"),
  b: el<HTMLInputElement>("b"),
  theta: el<HTMLInputElement>("theta"),
  p: el<HTMLInputElement>("p"),
  phi: el<HTMLInputElement>("phi"),
  thetaOut: el<HTMLElement>("theta-out"),
  pOut: el<HTMLElement>("p-out"),
  phiOut: el<HTMLElement>("phi-out"),
  lock: el<HTMLInputElement>("lock"),
  branches: el<HTMLElement>("branches"),
  status: el<HTMLElement>("status"),
  banner: el<HTMLElement>("banner"),
  overlayNote: el<HTMLElement>("overlay-note"),
  thetas: el<HTMLElement>("thetas"),
};

const scene = new JointScene(el<HTMLElement>("viewport"));

function solveRequest(s: UiState): SolveRequest {
  return {
    ell: s.params.ell,
    b: s.params.b,
    theta_deg: s.control.thetaDeg,
    p: s.control.p,
    phi_deg: s.control.phiDeg,
  };
}

const solver = createLatestWins<SolveRequest, Awaited<ReturnType<JointApi["solve"]>>>(
  (req) => api.solve(req),
  (_req, response) => update(applySolve(state, response)),
  (_req, error) => update(applyNetworkError(state, `solve failed: ${String(error)}`)),
);

function requestSolve(): void {
  solver.schedule(solveRequest(state));
}

async function requestBounds(): Promise<void> {
  try {
    const bounds = await api.bounds(state.params.ell, state.params.b, state.control.p);
    update(applyBounds(state, bounds));
  } catch (error) {
    update(applyNetworkError(state, `bounds failed: ${String(error)}`));
  }
}

async function requestSweep(): Promise<void> {
  ui.overlayNote.textContent = "sweeping the frozen-angle workspace...";
  try {
    const response = await api.sweep({
      ell: state.params.ell,
      b: state.params.b,
      theta_deg: state.control.thetaDeg,
      p_samples: 60,
      phi_samples: 60,
      branch: state.selectedBranch,
    });
    update(applySweep(state, response));
  } catch (error) {
    update(applyNetworkError(state, `sweep failed: ${String(error)}`));
  }
}

function update(next: UiState): void {
  state = next;
  render();
}

function render(): void {
  ui.ell.value = String(state.params.ell);
  ui.b.value = String(state.params.b);

  ui.theta.min = "0";
  ui.theta.max = state.bounds.thetaMaxDeg.toFixed(3);
  ui.theta.value = String(state.control.thetaDeg);
  ui.theta.disabled = state.brokenArmLocked;
  ui.thetaOut.textContent = `${state.control.thetaDeg.toFixed(1)} deg` +
    (state.brokenArmLocked ? " (locked)" : "") +
    `  [max ${state.bounds.thetaMaxDeg.toFixed(1)}]`;

  ui.p.min = String(state.bounds.pMin);
  ui.p.max = String(state.bounds.pMax);
  ui.p.value = String(state.control.p);
  ui.pOut.textContent = `${state.control.p.toFixed(3)}  [${state.bounds.pMin.toFixed(1)}, ${state.bounds.pMax.toFixed(1)}]`;

  ui.phi.value = String(state.control.phiDeg);
  ui.phiOut.textContent = `${state.control.phiDeg.toFixed(1)} deg`;

  ui.lock.checked = state.brokenArmLocked;

  const avail = availableBranches(state);
  ui.branches.querySelectorAll("input").forEach((node) => {
    const input = node as HTMLInputElement;
    input.checked = input.value === state.selectedBranch;
    input.disabled = avail.length > 0 && !avail.includes(input.value as BranchLabel);
  });

  ui.banner.textContent = state.banner ?? "";
  ui.banner.style.display = state.banner ? "block" : "none";

  const visible = visibleConfiguration(state);
  const diagnostics = invalidDiagnostics(state);
  scene.setJoint(visible);
  scene.setGhost(ghostConfiguration(state));
  document.body.classList.toggle("invalid", diagnostics.length > 0);
  if (visible) {
    ui.status.textContent = `valid - branch ${visible.branch}`;
    ui.thetas.textContent =
      "base angles: " + visible.thetas_deg.map((t) => `${t.toFixed(2)} deg`).join(", ");
  } else if (diagnostics.length > 0) {
    ui.status.textContent = "INVALID CONFIGURATION";
    ui.thetas.textContent = diagnostics.join("; ");
  } else {
    ui.status.textContent = "solving...";
    ui.thetas.textContent = "";
  }

  if (state.overlay) {
    const radius = state.params.ell * 1.6;
    scene.setOverlay(state.overlay.samples, radius);
    ui.overlayNote.textContent = state.overlay.empty
      ? "unreachable: the frozen angle admits no valid pose on this grid"
      : `${state.overlay.samples.length} reachable poses` +
        (state.overlay.coverage
          ? `, ${(state.overlay.coverage.fraction * 100).toFixed(1)}% of the sphere`
          : "");
  } else {
    scene.clearOverlay();
    ui.overlayNote.textContent = state.brokenArmLocked ? "" : "lock the arm to map its workspace";
  }
}

// ---- event wiring ---------------------------------------------------------

ui.theta.addEventListener("input", () => {
  update(setControl(state, { thetaDeg: Number(ui.theta.value) }));
  requestSolve();
});
ui.p.addEventListener("input", () => {
  update(setControl(state, { p: Number(ui.p.value) }));
  void requestBounds(); // theta_max depends on p
  requestSolve();
});
ui.phi.addEventListener("input", () => {
  update(setControl(state, { phiDeg: Number(ui.phi.value) }));
  requestSolve();
});

for (const input of [ui.ell, ui.b]) {
  input.addEventListener("change", () => {
    update(setParams(state, Number(ui.ell.value), Number(ui.b.value)));
    void requestBounds().then(() => requestSolve());
  });
}

ui.lock.addEventListener("change", () => {
  update(setBrokenArmLock(state, ui.lock.checked));
  if (state.brokenArmLocked) void requestSweep();
});

ALL_BRANCHES.forEach((label) => {
  const wrap = document.createElement("label");
  const input = document.createElement("input");
  input.type = "radio";
  input.name = "branch";
  input.value = label;
  input.addEventListener("change", () => {
    update(setBranch(state, label));
  });
  wrap.appendChild(input);
  wrap.appendChild(document.createTextNode(` ${label}`));
  ui.branches.appendChild(wrap);
});

scene.onOverlayPick((sample) => {
  update(pickCloudSample(state, sample));
  requestSolve();
});

// ---- boot -----------------------------------------------------------------

render();
void requestBounds().then(() => requestSolve());
