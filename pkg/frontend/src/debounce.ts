/**
 * Trailing-edge debounce for render requests.  Repeated request() calls
 * inside the window collapse into one firing; the callback reads the
 * live state when it finally runs, so the last write always wins.
 */
export function createDebouncedRender(requestRender: () => void, delayMs = 150): {
  request: () => void;
  flush: () => void;
  dispose: () => void;
} {
  let timer: ReturnType<typeof setTimeout> | null = null;
  const request = () => {
    if (timer) return;
    timer = setTimeout(() => {
      timer = null;
      requestRender();
    }, delayMs);
  };
  const flush = () => {
    if (!timer) return;
    clearTimeout(timer);
    timer = null;
    requestRender();
  };
  const dispose = () => {
    if (timer) {
      clearTimeout(timer);
      timer = null;
    }
  };
  return { request, flush, dispose };
}
