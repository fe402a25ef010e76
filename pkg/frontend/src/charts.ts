/** Minimal dependency-free SVG charts: a scatter and a pair of line series. */

import type { ScatterPoint } from './pareto';

const WIDTH = 560;
const HEIGHT = 360;
const PAD = 48;

const FAMILY_COLORS: Record<ScatterPoint['family'], string> = {
  optimizer: '#1f78b4',
  greedy: '#33a02c',
  random: '#b2b2b2',
  enacted: '#e31a1c',
};

function scale(values: number[], lo: number, hi: number): (v: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  const span = max - min || 1;
  return v => lo + ((v - min) / span) * (hi - lo);
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/"/g, '&quot;');
}

export function scatterSvg(points: ScatterPoint[]): string {
  if (points.length === 0) return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}"></svg>`;
  const x = scale(points.map(p => p.stringency), PAD, WIDTH - PAD);
  const y = scale(points.map(p => p.cases), HEIGHT - PAD, PAD);
  const dots = points
    .map(p => {
      const title = `${p.label}: cases ${p.cases.toFixed(2)}, stringency ${p.stringency.toFixed(4)}`;
      const ring = p.onFront
        ? ` stroke="#000" stroke-width="2"`
        : ` stroke="none"`;
      return (
        `<circle cx="${x(p.stringency).toFixed(1)}" cy="${y(p.cases).toFixed(1)}" r="6"` +
        ` fill="${FAMILY_COLORS[p.family]}"${ring} data-label="${esc(p.label)}">` +
        `<title>${esc(title)}</title></circle>`
      );
    })
    .join('');
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">` +
    `<line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" stroke="#888"/>` +
    `<line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}" stroke="#888"/>` +
    `<text x="${WIDTH / 2}" y="${HEIGHT - 10}" text-anchor="middle" font-size="12">mean stringency (normalized)</text>` +
    `<text x="14" y="${HEIGHT / 2}" transform="rotate(-90 14 ${HEIGHT / 2})" text-anchor="middle" font-size="12">mean daily cases</text>` +
    dots +
    `</svg>`
  );
}

function polyline(values: number[], x: (i: number) => number, y: (v: number) => number, color: string, dashed: boolean): string {
  const points = values.map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`).join(' ');
  const dash = dashed ? ` stroke-dasharray="6 4"` : '';
  return `<polyline fill="none" stroke="${color}" stroke-width="2"${dash} points="${points}"/>`;
}

export function trajectorySvg(current: number[], ghost: number[] | null): string {
  if (current.length === 0) return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}"></svg>`;
  const all = ghost ? current.concat(ghost) : current;
  const x = scale([0, current.length - 1], PAD, WIDTH - PAD);
  const y = scale(all.concat([0]), HEIGHT - PAD, PAD);
  let body = '';
  if (ghost) body += polyline(ghost, x, y, '#b0b0b0', true);
  body += polyline(current, x, y, '#1f78b4', false);
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">` +
    `<line x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}" stroke="#888"/>` +
    `<line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}" stroke="#888"/>` +
    `<text x="${WIDTH / 2}" y="${HEIGHT - 10}" text-anchor="middle" font-size="12">day</text>` +
    `<text x="14" y="${HEIGHT / 2}" transform="rotate(-90 14 ${HEIGHT / 2})" text-anchor="middle" font-size="12">predicted daily new cases</text>` +
    body +
    `</svg>`
  );
}
