/**
 * Dependency-free SVG charts. Values arrive 0-100 from the charts endpoint;
 * geometry derives from them, while every printed number is a server display
 * string (no client-side rounding).
 */

import { escapeAttr, escapeHtml } from './format.js';

const NS = 'http://www.w3.org/2000/svg';

function point(cx: number, cy: number, radius: number, index: number, count: number): [number, number] {
    const angle = (Math.PI * 2 * index) / count - Math.PI / 2;
    return [cx + radius * Math.cos(angle), cy + radius * Math.sin(angle)];
}

/** Radar of domain scores: one axis per domain, 0 at the centre, 100 at the rim. */
export function radarSvg(labels: string[], values: number[], displays: string[]): string {
    const size = 360;
    const cx = size / 2;
    const cy = size / 2;
    const radius = size / 2 - 58;
    const count = Math.max(labels.length, 1);

    const rings = [25, 50, 75, 100]
        .map((level) => {
            const ringPoints = Array.from({ length: count }, (_, i) =>
                point(cx, cy, (radius * level) / 100, i, count).join(','),
            ).join(' ');
            return count >= 3
                ? `<polygon class="radar-ring" points="${ringPoints}"/>`
                : `<circle class="radar-ring" cx="${cx}" cy="${cy}" r="${(radius * level) / 100}"/>`;
        })
        .join('');

    const axes = labels
        .map((label, i) => {
            const [x, y] = point(cx, cy, radius, i, count);
            const [lx, ly] = point(cx, cy, radius + 26, i, count);
            const anchor = Math.abs(lx - cx) < 8 ? 'middle' : lx > cx ? 'start' : 'end';
            return (
                `<line class="radar-axis" x1="${cx}" y1="${cy}" x2="${x}" y2="${y}"/>` +
                `<text class="radar-label" x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" ` +
                `text-anchor="${anchor}">${escapeHtml(label)}</text>`
            );
        })
        .join('');

    const shapePoints = values
        .map((value, i) => point(cx, cy, (radius * value) / 100, i, count))
        .map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`)
        .join(' ');
    const markers = values
        .map((value, i) => {
            const [x, y] = point(cx, cy, (radius * value) / 100, i, count);
            return (
                `<circle class="radar-point" cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="4">` +
                `<title>${escapeHtml(labels[i])}: ${escapeHtml(displays[i])}</title></circle>`
            );
        })
        .join('');

    const shape =
        count >= 3
            ? `<polygon class="radar-shape" points="${shapePoints}"/>`
            : `<polyline class="radar-shape" points="${shapePoints}"/>`;
    return (
        `<svg xmlns="${NS}" viewBox="0 0 ${size} ${size}" role="img" class="chart chart-radar" ` +
        `aria-label="Domain scores radar">${rings}${axes}${shape}${markers}</svg>`
    );
}

/** Grouped bars comparing practice (PIS) and metric (MAS) scores per domain. */
export function groupedBarsSvg(
    labels: string[],
    pis: number[],
    mas: number[],
    pisDisplays: string[],
    masDisplays: string[],
): string {
    const groupWidth = 84;
    const barWidth = 26;
    const chartHeight = 220;
    const labelBand = 64;
    const width = Math.max(labels.length * groupWidth + 40, 200);
    const height = chartHeight + labelBand;

    const bars = labels
        .map((label, i) => {
            const x0 = 30 + i * groupWidth;
            const pisHeight = (chartHeight * pis[i]) / 100;
            const masHeight = (chartHeight * mas[i]) / 100;
            return (
                `<rect class="bar bar-pis" x="${x0}" y="${(chartHeight - pisHeight).toFixed(1)}" ` +
                `width="${barWidth}" height="${pisHeight.toFixed(1)}">` +
                `<title>${escapeHtml(label)} PIS: ${escapeHtml(pisDisplays[i])}</title></rect>` +
                `<rect class="bar bar-mas" x="${x0 + barWidth + 4}" y="${(chartHeight - masHeight).toFixed(1)}" ` +
                `width="${barWidth}" height="${masHeight.toFixed(1)}">` +
                `<title>${escapeHtml(label)} MAS: ${escapeHtml(masDisplays[i])}</title></rect>` +
                `<text class="bar-label" x="${x0 + barWidth + 2}" y="${chartHeight + 14}" ` +
                `transform="rotate(30 ${x0 + barWidth + 2} ${chartHeight + 14})">` +
                `${escapeHtml(label)}</text>`
            );
        })
        .join('');

    const gridlines = [0, 50, 100]
        .map((level) => {
            const y = chartHeight - (chartHeight * level) / 100;
            return (
                `<line class="grid" x1="28" y1="${y}" x2="${width - 8}" y2="${y}"/>` +
                `<text class="grid-label" x="2" y="${y + 4}">${level}</text>`
            );
        })
        .join('');

    return (
        `<svg xmlns="${NS}" viewBox="0 0 ${width} ${height}" role="img" class="chart chart-bars" ` +
        `aria-label="Practice vs metric scores per domain" data-bars="${escapeAttr(String(labels.length))}">` +
        `${gridlines}${bars}` +
        `<g class="legend"><rect class="bar bar-pis" x="${width - 110}" y="6" width="12" height="12"/>` +
        `<text x="${width - 94}" y="16">PIS</text>` +
        `<rect class="bar bar-mas" x="${width - 60}" y="6" width="12" height="12"/>` +
        `<text x="${width - 44}" y="16">MAS</text></g></svg>`
    );
}
