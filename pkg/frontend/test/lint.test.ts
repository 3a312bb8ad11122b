import assert from 'node:assert/strict';
import { test } from 'node:test';

import { buildMarkers, debounce, markersForSection } from '../src/lint.js';
import type { LintReport } from '../src/types.js';

const REPORT: LintReport = {
    issues: [
        {
            span: 'towards the camera',
            issue: 'camera_relative_description',
            suggestion: 'moving towards south',
            section: 'prediction',
        },
        {
            span: '',
            issue: 'missing_task_section',
            suggestion: null,
            section: 'explanation',
        },
    ],
};

test('camera-relative issue produces a visible marker with suggestion', () => {
    const markers = buildMarkers(REPORT);
    const camera = markers.find((m) => m.kind === 'camera_relative_description');
    assert.ok(camera);
    assert.equal(camera.span, 'towards the camera');
    assert.match(camera.message, /moving towards south/);
});

test('markers are routed to their sections', () => {
    const markers = buildMarkers(REPORT);
    assert.equal(markersForSection(markers, 'prediction').length, 1);
    assert.equal(markersForSection(markers, 'explanation').length, 1);
    assert.equal(markersForSection(markers, 'perception').length, 0);
});

test('empty report renders no markers', () => {
    assert.deepEqual(buildMarkers({ issues: [] }), []);
});

test('debounce fires once after the quiet period with latest args', async () => {
    const calls: number[] = [];
    const run = debounce((n: number) => calls.push(n), 20);
    run(1);
    run(2);
    run(3);
    await new Promise((resolve) => setTimeout(resolve, 60));
    assert.deepEqual(calls, [3]);
});

test('debounce can fire again after settling', async () => {
    const calls: number[] = [];
    const run = debounce((n: number) => calls.push(n), 10);
    run(1);
    await new Promise((resolve) => setTimeout(resolve, 30));
    run(2);
    await new Promise((resolve) => setTimeout(resolve, 30));
    assert.deepEqual(calls, [1, 2]);
});
