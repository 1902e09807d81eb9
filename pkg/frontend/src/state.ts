/**
 * Explorer state machine, UI-framework-free so it can be driven from
 * tests exactly like from the DOM layer.
 *
 * The loop it implements: load a preset, edit (panel field, raw source
 * or variation tag), re-render through the service at preview size,
 * steer the next edit from what came back.  Guarantees the UI leans on:
 *
 * - at most one render in flight; superseding edits abort it and any
 *   stale reply that still arrives is discarded (last write wins)
 * - a failed render (diagnostic, busy, transport) never touches the
 *   last good image or the undo history
 * - a 503 arms a visible retry and re-fires by itself unless a newer
 *   edit gets there first
 */

import { Diagnostic, RenderReply, ServiceClient } from './api.js';
import { createDebouncedRender } from './debounce.js';
import { PanelBinding, PanelField, readPanel, rewriteField } from './scene.js';

export interface RenderedImage {
  bytes: Uint8Array;
  primitives: number;
  steps: number;
  elapsedMs: number;
}

export interface ExplorerState {
  presetName: string | null;
  source: string;
  variation: string;
  size: number;
  panel: PanelBinding;
  image: RenderedImage | null;
  diagnostic: Diagnostic | null;
  rendering: boolean;
  retryPending: boolean;
  canUndo: boolean;
}

export interface ExplorerOptions {
  /** Preview render size in pixels; full-size export is a separate, explicit act. */
  previewSize?: number;
  debounceMs?: number;
  retryDelayMs?: number;
  historyLimit?: number;
  onChange?: (state: ExplorerState) => void;
}

interface Snapshot {
  source: string;
  variation: string;
}

export interface Explorer {
  state(): ExplorerState;
  loadPreset(name: string): Promise<void>;
  setSource(text: string): void;
  setPanelField(field: PanelField, value: number): void;
  setVariation(tag: string): void;
  undo(): Promise<void>;
  /** Fire any debounced render immediately and wait for the in-flight one. */
  flush(): Promise<void>;
  /** Wait for the current render, if any, without forcing the debounce. */
  settled(): Promise<void>;
  dispose(): void;
}

export function createExplorer(client: ServiceClient, options: ExplorerOptions = {}): Explorer {
  const previewSize = options.previewSize ?? 400;
  const retryDelayMs = options.retryDelayMs ?? 1000;
  const historyLimit = options.historyLimit ?? 100;

  let presetName: string | null = null;
  let source = '';
  let variation = '';
  let panel: PanelBinding = { editable: false, reason: 'nothing loaded' };
  let image: RenderedImage | null = null;
  let diagnostic: Diagnostic | null = null;
  let rendering = false;
  let retryPending = false;
  const history: Snapshot[] = [];

  let seq = 0;
  let inFlight: AbortController | null = null;
  let active: Promise<void> = Promise.resolve();
  let retryTimer: ReturnType<typeof setTimeout> | null = null;

  const notify = () => options.onChange?.(snapshotState());

  function snapshotState(): ExplorerState {
    return {
      presetName,
      source,
      variation,
      size: previewSize,
      panel,
      image,
      diagnostic,
      rendering,
      retryPending,
      canUndo: history.length > 0,
    };
  }

  function cancelRetry() {
    if (retryTimer) {
      clearTimeout(retryTimer);
      retryTimer = null;
    }
    retryPending = false;
  }

  function applyReply(reply: RenderReply, elapsedMs: number) {
    switch (reply.status) {
      case 'ok':
        image = {
          bytes: reply.image,
          primitives: reply.primitives,
          steps: reply.steps,
          elapsedMs,
        };
        diagnostic = null;
        break;
      case 'scene-error':
        diagnostic = reply.diagnostic;
        break;
      case 'busy':
        retryPending = true;
        retryTimer = setTimeout(() => {
          retryTimer = null;
          // only if no newer edit superseded this render in the meantime
          if (retryPending) void fireRender();
        }, retryDelayMs);
        break;
      case 'rejected':
        diagnostic = { kind: 'request', message: reply.message };
        break;
    }
  }

  function fireRender(): Promise<void> {
    const ticket = ++seq;
    cancelRetry();
    inFlight?.abort();
    const ctrl = new AbortController();
    inFlight = ctrl;
    rendering = true;
    notify();

    const started = Date.now();
    const run = (async () => {
      let reply: RenderReply;
      try {
        reply = await client.render(
          { source, size: previewSize, variation },
          ctrl.signal,
        );
      } catch (err) {
        if (ticket !== seq) return; // our own abort, superseded
        rendering = false;
        diagnostic = { kind: 'network', message: String(err) };
        notify();
        return;
      }
      if (ticket !== seq) return; // stale reply: a newer render owns the screen
      rendering = false;
      applyReply(reply, Date.now() - started);
      notify();
    })();
    active = run;
    return run;
  }

  const debounce = createDebouncedRender(() => void fireRender(), options.debounceMs ?? 150);

  function pushHistory() {
    history.push({ source, variation });
    if (history.length > historyLimit) history.shift();
  }

  function afterEdit() {
    panel = readPanel(source);
    cancelRetry();
    debounce.request();
    notify();
  }

  return {
    state: snapshotState,

    async loadPreset(name) {
      const entries = await client.presets();
      const entry = entries.find((p) => p.name === name);
      if (!entry) throw new Error(`unknown preset '${name}'`);
      presetName = name;
      source = entry.source;
      variation = entry.variation;
      panel = readPanel(source);
      history.length = 0;
      diagnostic = null;
      cancelRetry();
      debounce.dispose();
      notify();
      await fireRender();
    },

    setSource(text) {
      if (text === source) return;
      pushHistory();
      source = text;
      afterEdit();
    },

    setPanelField(field, value) {
      if (!panel.editable) {
        throw new Error(`panel is read-only: ${panel.reason}`);
      }
      const next = rewriteField(source, field, value);
      if (next === null) {
        throw new Error(`field '${field}' not present in this scene`);
      }
      if (next === source) return;
      pushHistory();
      source = next;
      afterEdit();
    },

    setVariation(tag) {
      if (tag === variation) return;
      pushHistory();
      variation = tag;
      afterEdit();
    },

    async undo() {
      const prev = history.pop();
      if (!prev) return;
      source = prev.source;
      variation = prev.variation;
      panel = readPanel(source);
      cancelRetry();
      debounce.dispose();
      notify();
      await fireRender();
    },

    async flush() {
      debounce.flush();
      await active;
    },

    async settled() {
      await active;
    },

    dispose() {
      debounce.dispose();
      cancelRetry();
      inFlight?.abort();
    },
  };
}
