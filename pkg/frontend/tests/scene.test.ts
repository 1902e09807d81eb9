import { describe, expect, it } from 'vitest';

import {
  PanelField,
  readPanel,
  rewriteField,
  viewportSummary,
} from '../src/scene.js';

const BOUNDS_SCENE = `# fourfold symmetric test scene
startshape ragn(-1.4, 0.0)

LIMIT = 1000 # Image resolution
MAXSTEPS = 100

LIMLEFT = -0.6
LIMRIGHT = 0.6
LIMTOP = 0.6
LIMBOT = -0.6

shape ragn(c_r, c_i) {
  SQUARE[x c_r y c_i]
}
`;

const CENTER_SCENE = `startshape julia3(0.39, -0.252857)

MAXSTEPS = 400
SIDE = 0.84 # side of the viewport square
CX = 0.21
CY = -0.445714

LIMLEFT = CX - SIDE/2
LIMRIGHT = CX + SIDE/2

shape julia3(c_r, c_i) {
  SQUARE[x c_r y c_i]
}
`;

describe('readPanel', () => {
  it('binds a bounds-form scene', () => {
    const panel = readPanel(BOUNDS_SCENE);
    expect(panel.editable).toBe(true);
    if (!panel.editable) return;
    expect(panel.values.seedRe).toBe(-1.4);
    expect(panel.values.seedIm).toBe(0.0);
    expect(panel.values.maxSteps).toBe(100);
    expect(panel.values.viewport).toEqual({
      form: 'bounds',
      left: -0.6,
      right: 0.6,
      bottom: -0.6,
      top: 0.6,
    });
  });

  it('derives side and center for display', () => {
    const panel = readPanel(BOUNDS_SCENE);
    if (!panel.editable) throw new Error('expected editable');
    // the advertised example: seed (-1.4, 0), side 1.2 centered at the origin
    expect(viewportSummary(panel.values.viewport)).toEqual({ cx: 0, cy: 0, side: 1.2 });
  });

  it('falls back to the center+side form when bounds are derived', () => {
    const panel = readPanel(CENTER_SCENE);
    expect(panel.editable).toBe(true);
    if (!panel.editable) return;
    expect(panel.values.viewport).toEqual({
      form: 'center',
      cx: 0.21,
      cy: -0.445714,
      side: 0.84,
    });
    expect(viewportSummary(panel.values.viewport).side).toBe(0.84);
  });

  it('goes read-only when startshape has no literal seed', () => {
    const panel = readPanel('startshape forest\nMAXSTEPS = 200\n');
    expect(panel.editable).toBe(false);
    if (panel.editable) return;
    expect(panel.reason).toContain('seed');
  });

  it('goes read-only when the viewport is all expressions', () => {
    const src = ['startshape s(1, 2)', 'MAXSTEPS = 10', 'LIMLEFT = A - B', 'shape s(a, b) {}'].join(
      '\n',
    );
    const panel = readPanel(src);
    expect(panel.editable).toBe(false);
    if (panel.editable) return;
    expect(panel.reason).toContain('viewport');
  });

  it('goes read-only when MAXSTEPS is computed', () => {
    const src = BOUNDS_SCENE.replace('MAXSTEPS = 100', 'MAXSTEPS = BASE * 2');
    expect(readPanel(src).editable).toBe(false);
  });

  it('reads dot-leading and trailing-dot literals', () => {
    const src = BOUNDS_SCENE.replace('LIMRIGHT = 0.6', 'LIMRIGHT = .6').replace(
      'MAXSTEPS = 100',
      'MAXSTEPS = 100.',
    );
    const panel = readPanel(src);
    if (!panel.editable) throw new Error('expected editable');
    expect(panel.values.maxSteps).toBe(100);
    expect(panel.values.viewport).toMatchObject({ right: 0.6 });
  });
});

describe('rewriteField', () => {
  it('rewrites the seed imaginary part and nothing else', () => {
    const next = rewriteField(BOUNDS_SCENE, 'seedIm', -0.25);
    expect(next).not.toBeNull();
    expect(next).toContain('startshape ragn(-1.4, -0.25)');
    // every other line untouched
    expect(next!.split('\n').slice(2)).toEqual(BOUNDS_SCENE.split('\n').slice(2));
  });

  it('rewrites constants in place, keeping trailing comments', () => {
    const next = rewriteField(BOUNDS_SCENE, 'maxSteps', 250)!;
    expect(next).toContain('MAXSTEPS = 250');
    expect(next).toContain('LIMIT = 1000 # Image resolution');
  });

  it('keeps the comment on the rewritten line itself', () => {
    const next = rewriteField(CENTER_SCENE, 'side', 1.5)!;
    expect(next).toContain('SIDE = 1.5 # side of the viewport square');
  });

  it('is byte-identical when the value does not change', () => {
    expect(rewriteField(BOUNDS_SCENE, 'seedRe', -1.4)).toBe(BOUNDS_SCENE);
    expect(rewriteField(BOUNDS_SCENE, 'top', 0.6)).toBe(BOUNDS_SCENE);
  });

  it('returns null for fields of the other viewport form', () => {
    expect(rewriteField(BOUNDS_SCENE, 'cx', 0)).toBeNull();
    expect(rewriteField(CENTER_SCENE, 'left', 0)).toBeNull();
  });

  it('returns null for non-finite values', () => {
    expect(rewriteField(BOUNDS_SCENE, 'seedRe', NaN)).toBeNull();
    expect(rewriteField(BOUNDS_SCENE, 'seedRe', Infinity)).toBeNull();
  });

  it('round-trips every editable field through the source', () => {
    const edits: [PanelField, number][] = [
      ['seedRe', 0.123],
      ['seedIm', -0.777],
      ['maxSteps', 64],
      ['left', -1.25],
      ['right', 1.75],
      ['bottom', -2],
      ['top', 2],
    ];
    let src = BOUNDS_SCENE;
    for (const [field, value] of edits) {
      src = rewriteField(src, field, value)!;
    }
    const panel = readPanel(src);
    if (!panel.editable) throw new Error('expected editable');
    expect(panel.values.seedRe).toBe(0.123);
    expect(panel.values.seedIm).toBe(-0.777);
    expect(panel.values.maxSteps).toBe(64);
    expect(panel.values.viewport).toEqual({
      form: 'bounds',
      left: -1.25,
      right: 1.75,
      bottom: -2,
      top: 2,
    });
  });
});
