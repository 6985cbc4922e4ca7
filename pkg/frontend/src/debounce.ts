/**
 * Latest-wins async scheduler: coalesces rapid slider changes, keeps at most
 * one request in flight, and never delivers a stale result. If newer input
 * arrives while a request is flying, the response is dropped and the newest
 * input is sent as soon as the wire is free.
 */

export interface LatestWins<A> {
  schedule(arg: A): void;
  /** Fire the pending argument immediately (skips the quiet period). */
  flush(): void;
  dispose(): void;
}

export function createLatestWins<A, R>(
  run: (arg: A) => Promise<R>,
  onResult: (arg: A, result: R) => void,
  onError: (arg: A, error: unknown) => void,
  delayMs = 120,
): LatestWins<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: { arg: A } | null = null;
  let inFlight = false;
  let disposed = false;

  const fire = () => {
    if (disposed || inFlight || !pending) return;
    const { arg } = pending;
    pending = null;
    inFlight = true;
    run(arg).then(
      (result) => {
        inFlight = false;
        if (disposed) return;
        if (pending) {
          fire(); // newer input superseded this response
        } else {
          onResult(arg, result);
        }
      },
      (error) => {
        inFlight = false;
        if (disposed) return;
        if (pending) {
          fire();
        } else {
          onError(arg, error);
        }
      },
    );
  };

  return {
    schedule(arg: A) {
      pending = { arg };
      if (timer) clearTimeout(timer);
      timer = setTimeout(() => {
        timer = null;
        fire();
      }, delayMs);
    },
    flush() {
      if (timer) {
        clearTimeout(timer);
        timer = null;
      }
      fire();
    },
    dispose() {
      disposed = true;
      if (timer) clearTimeout(timer);
    },
  };
}
