import { describe, expect, it } from 'vitest';

import {
  CRITERIA,
  SAATY_CHOICES,
  buildMatrix,
  choiceByLabel,
  defaultChoices,
  matrixPayload,
  upperTrianglePairs,
  worstCell,
} from '../src/matrix.js';

function parseWire(value: number | string): number {
  if (typeof value === 'number') return value;
  const [numerator, denominator] = value.split('/').map(Number);
  return numerator / denominator;
}

describe('upperTrianglePairs', () => {
  it('yields ten cells for five criteria', () => {
    const pairs = upperTrianglePairs(CRITERIA.length);
    expect(pairs).toHaveLength(10);
    for (const pair of pairs) {
      expect(pair.row).toBeLessThan(pair.col);
    }
  });
});

describe('SAATY_CHOICES', () => {
  it('covers 9..2, 1 and 1/2..1/9 in order', () => {
    expect(SAATY_CHOICES).toHaveLength(17);
    expect(SAATY_CHOICES[0].label).toBe('9');
    expect(SAATY_CHOICES[8].label).toBe('1');
    expect(SAATY_CHOICES[16].label).toBe('1/9');
    for (const choice of SAATY_CHOICES) {
      expect(parseWire(choice.wire)).toBeCloseTo(choice.value, 12);
    }
  });
});

describe('buildMatrix', () => {
  it('derives a reciprocal matrix with a unit diagonal for every choice', () => {
    for (const choice of SAATY_CHOICES) {
      const matrix = buildMatrix(Array(10).fill(choice));
      for (let i = 0; i < 5; i += 1) {
        expect(matrix[i][i]).toBe(1);
        for (let j = 0; j < 5; j += 1) {
          expect(matrix[i][j] * matrix[j][i]).toBeCloseTo(1, 12);
        }
      }
    }
  });

  it('rejects the wrong number of judgments', () => {
    expect(() => buildMatrix([])).toThrow(/expected 10/);
  });
});

describe('matrixPayload', () => {
  it('pairs every entry with its exact rational reciprocal', () => {
    const choices = [
      choiceByLabel('3'), choiceByLabel('7'), choiceByLabel('1/5'), choiceByLabel('9'),
      choiceByLabel('1'), choiceByLabel('1/2'), choiceByLabel('4'), choiceByLabel('1/9'),
      choiceByLabel('2'), choiceByLabel('6'),
    ];
    const payload = matrixPayload(choices);
    expect(payload.criteria).toEqual(['SI', 'NR', 'RA', 'NVR', 'NVP']);
    const pairs = upperTrianglePairs(5);
    pairs.forEach((pair, index) => {
      const upper = payload.matrix[pair.row][pair.col];
      const lower = payload.matrix[pair.col][pair.row];
      expect(parseWire(upper)).toBeCloseTo(choices[index].value, 12);
      expect(parseWire(upper) * parseWire(lower)).toBeCloseTo(1, 12);
      // integers stay numbers; their reciprocals are exact fraction strings
      if (typeof upper === 'number' && upper !== 1) {
        expect(lower).toBe(`1/${upper}`);
      }
    });
    for (let i = 0; i < 5; i += 1) {
      expect(payload.matrix[i][i]).toBe(1);
    }
  });

  it('default judgments are all-indifferent (value 1 everywhere)', () => {
    const payload = matrixPayload(defaultChoices());
    for (const row of payload.matrix) {
      for (const value of row) {
        expect(parseWire(value)).toBe(1);
      }
    }
  });
});

describe('worstCell', () => {
  it('points at the judgment deviating most from the weight-implied ratio', () => {
    // cyclic SI > NR > RA > SI judgments with near-uniform derived weights
    const matrix = buildMatrix([
      choiceByLabel('9'),   // SI vs NR
      choiceByLabel('1/9'), // SI vs RA
      choiceByLabel('1'), choiceByLabel('1'),
      choiceByLabel('9'),   // NR vs RA
      choiceByLabel('1'), choiceByLabel('1'),
      choiceByLabel('1'), choiceByLabel('1'), choiceByLabel('1'),
    ]);
    const weights = { SI: 0.2, NR: 0.2, RA: 0.2, NVR: 0.2, NVP: 0.2 };
    const cell = worstCell(matrix, weights);
    expect([
      '0-1', '0-2', '1-2',
    ]).toContain(`${cell.row}-${cell.col}`);
    expect(Math.abs(Math.log(cell.stated))).toBeCloseTo(Math.log(9), 10);
  });

  it('prefers the largest log deviation', () => {
    const matrix = buildMatrix([
      choiceByLabel('2'),   // SI vs NR, mild
      choiceByLabel('1/9'), // SI vs RA, extreme against near-equal weights
      choiceByLabel('1'), choiceByLabel('1'), choiceByLabel('1'),
      choiceByLabel('1'), choiceByLabel('1'), choiceByLabel('1'),
      choiceByLabel('1'), choiceByLabel('1'),
    ]);
    const weights = { SI: 0.21, NR: 0.2, RA: 0.2, NVR: 0.2, NVP: 0.19 };
    const cell = worstCell(matrix, weights);
    expect(`${cell.row}-${cell.col}`).toBe('0-2');
  });
});

describe('choiceByLabel', () => {
  it('resolves labels and rejects unknown ones', () => {
    expect(choiceByLabel('1/7').value).toBeCloseTo(1 / 7, 12);
    expect(() => choiceByLabel('10')).toThrow(/unknown/);
  });
});
