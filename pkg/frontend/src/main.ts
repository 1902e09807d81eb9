/**
 * DOM wiring for the explorer: preset picker, structured parameter
 * panel, raw source editor, preview image, diagnostics bar, undo.
 * All state transitions live in state.ts; this file only reflects
 * ExplorerState into elements and forwards events back.
 */

import { createClient } from './api.js';
import { createExplorer, ExplorerState } from './state.js';
import { PanelField, viewportSummary } from './scene.js';

const serviceBase = (window as any).JULIART_SERVICE ?? 'http://127.0.0.1:8000';
const client = createClient(serviceBase);

const el = (id: string) => document.getElementById(id)!;
const presetSelect = el('preset') as HTMLSelectElement;
const panelDiv = el('panel');
const panelNote = el('panel-note');
const sourceBox = el('source') as HTMLTextAreaElement;
const variationBox = el('variation') as HTMLInputElement;
const preview = el('preview') as HTMLImageElement;
const statusBar = el('status');
const diagBar = el('diagnostic');
const undoButton = el('undo') as HTMLButtonElement;
const banner = el('banner');

let previewUrl: string | null = null;

const explorer = createExplorer(client, {
  previewSize: 400,
  onChange: reflect,
});

function reflect(state: ExplorerState) {
  // editor: don't clobber the caret while the user is typing there
  if (document.activeElement !== sourceBox && sourceBox.value !== state.source) {
    sourceBox.value = state.source;
  }
  if (document.activeElement !== variationBox) {
    variationBox.value = state.variation;
  }
  undoButton.disabled = !state.canUndo;
  renderPanel(state);
  renderImage(state);
  renderStatus(state);
}

function renderPanel(state: ExplorerState) {
  if (!state.panel.editable) {
    panelDiv.querySelectorAll('input').forEach((i) => (i.disabled = true));
    panelNote.textContent = `panel read-only: ${state.panel.reason} — edit the source directly, or reload the preset`;
    return;
  }
  panelNote.textContent = '';
  const v = state.panel.values;
  const vp = viewportSummary(v.viewport);
  const fields: [PanelField, number][] =
    v.viewport.form === 'bounds'
      ? [
          ['seedRe', v.seedRe],
          ['seedIm', v.seedIm],
          ['maxSteps', v.maxSteps],
          ['left', v.viewport.left],
          ['right', v.viewport.right],
          ['bottom', v.viewport.bottom],
          ['top', v.viewport.top],
        ]
      : [
          ['seedRe', v.seedRe],
          ['seedIm', v.seedIm],
          ['maxSteps', v.maxSteps],
          ['cx', v.viewport.cx],
          ['cy', v.viewport.cy],
          ['side', v.viewport.side],
        ];

  panelDiv.innerHTML = '';
  for (const [field, value] of fields) {
    const label = document.createElement('label');
    label.textContent = field;
    const input = document.createElement('input');
    input.type = 'number';
    input.step = 'any';
    input.value = String(value);
    input.addEventListener('change', () => {
      const parsed = parseFloat(input.value);
      if (Number.isFinite(parsed)) explorer.setPanelField(field, parsed);
    });
    label.appendChild(input);
    panelDiv.appendChild(label);
  }
  const summary = document.createElement('div');
  summary.className = 'viewport-summary';
  summary.textContent = `viewport: side ${fmt(vp.side)} centered at (${fmt(vp.cx)}, ${fmt(vp.cy)})`;
  panelDiv.appendChild(summary);
}

function fmt(x: number): string {
  return Number.isInteger(x) ? String(x) : x.toPrecision(6).replace(/0+$/, '').replace(/\.$/, '');
}

function renderImage(state: ExplorerState) {
  if (!state.image) return;
  if (previewUrl) URL.revokeObjectURL(previewUrl);
  // copy into a fresh ArrayBuffer-backed view; Blob rejects ArrayBufferLike
  const bytes = new Uint8Array(state.image.bytes);
  previewUrl = URL.createObjectURL(new Blob([bytes], { type: 'image/png' }));
  preview.src = previewUrl;
}

function renderStatus(state: ExplorerState) {
  if (state.rendering) {
    statusBar.textContent = 'rendering…';
  } else if (state.retryPending) {
    statusBar.textContent = 'server busy — queued for retry';
  } else if (state.image) {
    const i = state.image;
    statusBar.textContent = `${i.primitives} primitives in ${i.elapsedMs} ms`;
  } else {
    statusBar.textContent = '';
  }

  if (state.diagnostic) {
    const d = state.diagnostic;
    const where = d.line != null ? ` (line ${d.line}, column ${d.col})` : '';
    const stack = d.shapes?.length ? ` [in ${d.shapes.join(' > ')}]` : '';
    diagBar.textContent = `${d.kind}: ${d.message}${where}${stack}`;
    diagBar.hidden = false;
    highlightLine(d.line ?? null);
  } else {
    diagBar.hidden = true;
    highlightLine(null);
  }
}

// crude but effective line anchoring: select the offending line so the
// browser scrolls the editor to it
function highlightLine(line: number | null) {
  if (line == null || document.activeElement === sourceBox) return;
  const lines = sourceBox.value.split('\n');
  if (line < 1 || line > lines.length) return;
  const start = lines.slice(0, line - 1).reduce((n, l) => n + l.length + 1, 0);
  sourceBox.setSelectionRange(start, start + lines[line - 1].length);
}

async function boot() {
  try {
    const presets = await client.presets();
    presetSelect.innerHTML = '';
    for (const p of presets) {
      const opt = document.createElement('option');
      opt.value = p.name;
      opt.textContent = `${p.name} — ${p.title}`;
      presetSelect.appendChild(opt);
    }
    banner.hidden = true;
    await explorer.loadPreset(presets[0].name);
  } catch (err) {
    banner.textContent = `service unreachable at ${serviceBase}: ${err}`;
    banner.hidden = false;
  }
}

presetSelect.addEventListener('change', () => {
  explorer.loadPreset(presetSelect.value).catch((err) => {
    banner.textContent = String(err);
    banner.hidden = false;
  });
});
sourceBox.addEventListener('input', () => explorer.setSource(sourceBox.value));
variationBox.addEventListener('change', () => explorer.setVariation(variationBox.value));
undoButton.addEventListener('click', () => void explorer.undo());
el('retry-banner-button')?.addEventListener('click', () => void boot());

void boot();
