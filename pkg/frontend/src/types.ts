/**
 * Wire types for the kinematics service. Degrees on the wire; the embedded
 * canonical configuration document uses radians, but the UI only reads its
 * coordinate arrays (it performs no kinematic math of its own).
 */

export type BranchLabel = "++" | "+-" | "-+" | "--";

export const ALL_BRANCHES: BranchLabel[] = ["++", "+-", "-+", "--"];

export type Vec3 = [number, number, number];

export interface JointParams {
  ell: number;
  b: number;
}

export interface BoundsResponse {
  p_bounds: [number, number];
  d?: number;
  theta_max_deg?: number;
}

/** Canonical configuration document (coordinates in the base frame). */
export interface ConfigurationDoc {
  params: JointParams;
  control: { theta: number; p: number; phi: number };
  branch: BranchLabel;
  base_hinges: Vec3[];
  ball_joints: Vec3[];
  distal_hinges: Vec3[];
  distal_center: Vec3;
  distal_normal: Vec3;
  joint_center: Vec3;
  p: number;
  thetas: number[];
}

export interface ConfigurationEntry {
  branch: BranchLabel;
  thetas_deg: number[];
  config: ConfigurationDoc;
}

export interface SolveRequest {
  ell: number;
  b: number;
  theta_deg: number;
  p: number;
  phi_deg: number;
  branch?: BranchLabel;
}

export interface SolveResponse {
  valid: boolean;
  configurations: ConfigurationEntry[];
  failures: string[];
  arm_status?: string[];
  bounds: { p_bounds: [number, number]; theta_max_deg: number };
}

export interface SweepRequest {
  ell: number;
  b: number;
  theta_deg: number;
  p_samples: number;
  phi_samples: number;
  p_range?: [number, number];
  phi_range_deg?: [number, number];
  branch?: BranchLabel;
  bins?: number;
}

export interface SweepSample {
  theta: number; // radians (canonical cloud document)
  p: number;
  phi: number; // radians
  branch: BranchLabel;
  center: Vec3;
  pointing: Vec3;
}

export interface SweepResponse {
  params: JointParams;
  rejected: number;
  samples: SweepSample[];
  coverage: { fraction: number; bins_requested: number } | null;
  empty: boolean;
}

export interface FkSolutionEntry {
  p: number;
  phi_deg: number;
  branch: BranchLabel;
}

export interface FkResponse {
  solutions: FkSolutionEntry[];
  degenerate_fold: boolean;
}
