/**
 * Typed client for the render service.
 *
 * The service speaks a small JSON-in, PNG-out protocol: scene problems
 * come back as 422 with a positioned diagnostic, malformed requests as
 * 400, and a saturated render pool as 503.  All of those are expected
 * states the explorer has to surface, so render() never throws for
 * them — only genuine transport failures reject.
 */

export interface PresetEntry {
  name: string;
  title: string;
  source: string;
  seed_re: number;
  seed_im: number;
  max_steps: number;
  resolution: number;
  variation: string;
}

export interface RenderParams {
  source: string;
  size: number;
  border?: number;
  variation?: string;
}

export interface Diagnostic {
  kind: string;
  message: string;
  line?: number;
  col?: number;
  shapes?: string[];
}

export type RenderReply =
  | { status: 'ok'; image: Uint8Array; primitives: number; steps: number }
  | { status: 'scene-error'; diagnostic: Diagnostic }
  | { status: 'busy' }
  | { status: 'rejected'; message: string };

export interface ServiceClient {
  health(): Promise<{ status: string; version: string }>;
  presets(): Promise<PresetEntry[]>;
  render(params: RenderParams, signal?: AbortSignal): Promise<RenderReply>;
}

export function createClient(baseUrl: string): ServiceClient {
  const base = baseUrl.replace(/\/$/, '');

  return {
    async health() {
      const resp = await fetch(`${base}/health`);
      if (!resp.ok) throw new Error(`health check failed: ${resp.status}`);
      return resp.json();
    },

    async presets() {
      const resp = await fetch(`${base}/presets`);
      if (!resp.ok) throw new Error(`preset listing failed: ${resp.status}`);
      return resp.json();
    },

    async render(params, signal) {
      const resp = await fetch(`${base}/render`, {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(params),
        signal,
      });
      if (resp.ok) {
        const buf = await resp.arrayBuffer();
        return {
          status: 'ok',
          image: new Uint8Array(buf),
          primitives: Number(resp.headers.get('X-Primitives') ?? 0),
          steps: Number(resp.headers.get('X-Steps') ?? 0),
        };
      }
      if (resp.status === 503) return { status: 'busy' };
      const body = await resp.json().catch(() => null);
      const err = body?.error;
      if (resp.status === 422 && err) {
        return { status: 'scene-error', diagnostic: err as Diagnostic };
      }
      return {
        status: 'rejected',
        message: err?.message ?? `render failed: ${resp.status}`,
      };
    },
  };
}
