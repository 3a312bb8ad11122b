import assert from 'node:assert/strict';
import { test } from 'node:test';

import {
    buildPayload,
    emptyForm,
    focusTarget,
    isComplete,
    missingSections,
} from '../src/form.js';
import { SECTIONS } from '../src/types.js';

function filled() {
    const values = emptyForm();
    values.perception = 'One pedestrian is on the left of the robot.';
    values.prediction = 'They will continue moving towards north.';
    values.cot_reasoning = 'Their path stays clear of the corridor.';
    values.final_action = 'Proceed.';
    values.explanation = 'No pedestrian poses a risk of collision.';
    return values;
}

test('submit is blocked while any section is empty', () => {
    const values = filled();
    assert.equal(isComplete(values), true);
    for (const name of SECTIONS) {
        const broken = { ...values, [name]: '   ' };
        assert.equal(isComplete(broken), false, name);
        assert.deepEqual(missingSections(broken), [name]);
    }
});

test('fresh form is incomplete with all sections missing', () => {
    assert.equal(isComplete(emptyForm()), false);
    assert.equal(missingSections(emptyForm()).length, 5);
});

test('payload carries the five sections plus annotator metadata', () => {
    const payload = buildPayload(filled(), 'ann-7');
    for (const name of SECTIONS) {
        assert.equal(payload[name], filled()[name]);
    }
    assert.equal(payload.annotator_id, 'ann-7');
    assert.ok(payload.created_at && payload.created_at.includes('T'));
});

test('server error field wins the focus target', () => {
    assert.equal(focusTarget(filled(), 'final_action'), 'final_action');
});

test('focus falls back to first missing section', () => {
    const values = { ...filled(), prediction: '' };
    assert.equal(focusTarget(values, null), 'prediction');
    assert.equal(focusTarget(values, 'not_a_section'), 'prediction');
});

test('complete form with no error field has no focus target', () => {
    assert.equal(focusTarget(filled(), null), null);
});
