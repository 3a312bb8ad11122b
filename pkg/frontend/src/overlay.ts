// Bounding-box overlay geometry and the color legend. Overlay tints come
// straight from the service's color assignment; the legend check verifies
// every color referenced by the round-1 text is actually drawn.

import type { Overlay, QaTurn } from './types.js';

export interface OverlayBox {
    trackId: string;
    color: string;
    // percent coordinates relative to the rendered image
    leftPct: number;
    topPct: number;
    widthPct: number;
    heightPct: number;
}

export function toOverlayBoxes(
    overlays: Overlay[],
    imageWidth: number,
    imageHeight: number,
): OverlayBox[] {
    return overlays.map((o) => {
        const [x1, y1, x2, y2] = o.bbox;
        return {
            trackId: o.track_id,
            color: o.color,
            leftPct: (x1 / imageWidth) * 100,
            topPct: (y1 / imageHeight) * 100,
            widthPct: ((x2 - x1) / imageWidth) * 100,
            heightPct: ((y2 - y1) / imageHeight) * 100,
        };
    });
}

export function legendEntries(overlays: Overlay[]): { color: string; trackId: string }[] {
    return overlays.map((o) => ({ color: o.color, trackId: o.track_id }));
}

/**
 * Every overlay color that the round-1 answer mentions ("... in the red
 * bounding box") must be present in the legend, and drawn colors must be
 * unique. Returns a list of discrepancies (empty = agreement).
 */
export function legendDiscrepancies(
    overlays: Overlay[],
    round1: QaTurn[],
): string[] {
    const problems: string[] = [];
    const drawn = new Set(overlays.map((o) => o.color));
    if (drawn.size !== overlays.length) {
        problems.push('duplicate overlay colors');
    }
    const text = round1.map((t) => `${t.question} ${t.answer}`).join(' ');
    const mentioned = new Set<string>();
    const re = /in the ([a-z]+) bounding box/g;
    let match: RegExpExecArray | null;
    while ((match = re.exec(text)) !== null) {
        mentioned.add(match[1]!);
    }
    for (const color of mentioned) {
        if (!drawn.has(color)) {
            problems.push(`text references ${color} but no ${color} box is drawn`);
        }
    }
    return problems;
}
