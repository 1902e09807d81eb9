/**
 * Panel <-> source binding.
 *
 * The structured panel edits numeric literals in the scene text in
 * place: the seed pair in the startshape call, the MAXSTEPS constant,
 * and the viewport — either as four literal bounds (LIMLEFT/LIMRIGHT/
 * LIMBOT/LIMTOP) or as a literal center+side triple (CX/CY/SIDE),
 * whichever form the scene declares.  Scenes that express any of these
 * as derived expressions (or omit startshape arguments) flip the panel
 * to read-only rather than guessing; hand-editing the source always
 * stays possible, the panel just stops pretending to track it.
 */

// scene-grammar number: 12, 1.5, .25, 10. — with optional leading minus
const NUM = '-?(?:\\d+\\.?\\d*|\\.\\d+)';

const START_RE = new RegExp(
  `^(startshape[ \\t]+[A-Za-z_]\\w*[ \\t]*\\([ \\t]*)(${NUM})([ \\t]*,[ \\t]*)(${NUM})([ \\t]*\\))`,
  'm',
);

function constRe(name: string): RegExp {
  return new RegExp(`^(${name}[ \\t]*=[ \\t]*)(${NUM})([ \\t]*(?:#.*)?)$`, 'm');
}

export type ViewportValues =
  | { form: 'bounds'; left: number; right: number; bottom: number; top: number }
  | { form: 'center'; cx: number; cy: number; side: number };

export interface PanelValues {
  seedRe: number;
  seedIm: number;
  maxSteps: number;
  viewport: ViewportValues;
}

export type PanelField =
  | 'seedRe'
  | 'seedIm'
  | 'maxSteps'
  | 'left'
  | 'right'
  | 'bottom'
  | 'top'
  | 'cx'
  | 'cy'
  | 'side';

export type PanelBinding =
  | { editable: true; values: PanelValues }
  | { editable: false; reason: string };

const BOUND_CONSTS: Record<string, string> = {
  left: 'LIMLEFT',
  right: 'LIMRIGHT',
  bottom: 'LIMBOT',
  top: 'LIMTOP',
};

const CENTER_CONSTS: Record<string, string> = {
  cx: 'CX',
  cy: 'CY',
  side: 'SIDE',
};

function readConst(source: string, name: string): number | null {
  const m = constRe(name).exec(source);
  return m ? parseFloat(m[2]) : null;
}

export function readPanel(source: string): PanelBinding {
  const start = START_RE.exec(source);
  if (!start) {
    return { editable: false, reason: 'startshape seed arguments are not numeric literals' };
  }
  const maxSteps = readConst(source, 'MAXSTEPS');
  if (maxSteps === null) {
    return { editable: false, reason: 'MAXSTEPS is not a numeric literal' };
  }

  let viewport: ViewportValues | null = null;
  const bounds = ['left', 'right', 'bottom', 'top'].map((f) =>
    readConst(source, BOUND_CONSTS[f]),
  );
  if (bounds.every((v) => v !== null)) {
    const [left, right, bottom, top] = bounds as number[];
    viewport = { form: 'bounds', left, right, bottom, top };
  } else {
    const center = ['cx', 'cy', 'side'].map((f) => readConst(source, CENTER_CONSTS[f]));
    if (center.every((v) => v !== null)) {
      const [cx, cy, side] = center as number[];
      viewport = { form: 'center', cx, cy, side };
    }
  }
  if (!viewport) {
    return { editable: false, reason: 'viewport constants are not numeric literals' };
  }

  return {
    editable: true,
    values: {
      seedRe: parseFloat(start[2]),
      seedIm: parseFloat(start[4]),
      maxSteps,
      viewport,
    },
  };
}

/** Center and side length, derived for display whichever form the scene uses. */
export function viewportSummary(v: ViewportValues): { cx: number; cy: number; side: number } {
  if (v.form === 'center') return { cx: v.cx, cy: v.cy, side: v.side };
  return {
    cx: (v.left + v.right) / 2,
    cy: (v.bottom + v.top) / 2,
    side: v.right - v.left,
  };
}

function spliceGroup(
  source: string,
  m: RegExpExecArray,
  group: number,
  replacement: string,
): string {
  let offset = m.index;
  for (let g = 1; g < group; g++) offset += m[g].length;
  return source.slice(0, offset) + replacement + source.slice(offset + m[group].length);
}

/**
 * Rewrite one panel field's literal in the source.  Returns null when
 * the field cannot be located (read-only scene, or a field belonging
 * to the other viewport form).  Rewriting a field to the value it
 * already holds returns the source unchanged, byte for byte.
 */
export function rewriteField(source: string, field: PanelField, value: number): string | null {
  if (!Number.isFinite(value)) return null;

  if (field === 'seedRe' || field === 'seedIm') {
    const m = START_RE.exec(source);
    if (!m) return null;
    const group = field === 'seedRe' ? 2 : 4;
    if (parseFloat(m[group]) === value) return source;
    return spliceGroup(source, m, group, String(value));
  }

  const name =
    field === 'maxSteps' ? 'MAXSTEPS' : BOUND_CONSTS[field] ?? CENTER_CONSTS[field];
  const m = constRe(name).exec(source);
  if (!m) return null;
  if (parseFloat(m[2]) === value) return source;
  return spliceGroup(source, m, 2, String(value));
}
