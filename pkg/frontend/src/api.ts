/**
 * Thin typed client over the kinematics service. The base URL is
 * configurable (``?service=`` query parameter in the page, constructor here)
 * and fetch is injectable so tests can stub the network.
 */

import type {
  BoundsResponse,
  FkResponse,
  SolveRequest,
  SolveResponse,
  SweepRequest,
  SweepResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`service responded ${status}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class JointApi {
  constructor(
    public baseUrl: string = "http://127.0.0.1:8787",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let detail: unknown = null;
      try {
        detail = await response.json();
      } catch {
        // non-JSON error body; status alone will have to do
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  bounds(ell: number, b: number, p?: number): Promise<BoundsResponse> {
    const query = new URLSearchParams({ ell: String(ell), b: String(b) });
    if (p !== undefined) query.set("p", String(p));
    return this.request<BoundsResponse>(`/api/bounds?${query}`);
  }

  solve(req: SolveRequest): Promise<SolveResponse> {
    return this.post<SolveResponse>("/api/solve", req);
  }

  sweep(req: SweepRequest): Promise<SweepResponse> {
    return this.post<SweepResponse>("/api/sweep", req);
  }

  fk(req: { ell: number; b: number; theta1_deg: number; theta2_deg: number; theta3_deg: number }): Promise<FkResponse> {
    return this.post<FkResponse>("/api/fk", req);
  }
}
