// Comparison-grid model: the user fills only the ten upper-triangle cells;
// the full reciprocal matrix is derived, so every submitted matrix is valid
// by construction. Reciprocal values go over the wire as exact-fraction
// strings ("1/3"), which the service parses as rationals.

export const CRITERIA = ['SI', 'NR', 'RA', 'NVR', 'NVP'] as const;

export const CRITERION_NAMES: Record<string, string> = {
  SI: 'similarity',
  NR: 'review count',
  RA: 'rating',
  NVR: 'video reviews',
  NVP: 'video plays',
};

export interface SaatyChoice {
  label: string; // what the selector shows
  value: number; // numeric value for local math
  wire: number | string; // exact wire form
}

// 9 .. 2, 1, 1/2 .. 1/9 — row criterion from "dominates" to "is dominated".
export const SAATY_CHOICES: SaatyChoice[] = [
  ...[9, 8, 7, 6, 5, 4, 3, 2].map((k) => ({ label: String(k), value: k, wire: k })),
  { label: '1', value: 1, wire: 1 },
  ...[2, 3, 4, 5, 6, 7, 8, 9].map((k) => ({
    label: `1/${k}`,
    value: 1 / k,
    wire: `1/${k}`,
  })),
];

export interface GridPair {
  row: number;
  col: number;
}

export function upperTrianglePairs(order: number): GridPair[] {
  const pairs: GridPair[] = [];
  for (let row = 0; row < order; row += 1) {
    for (let col = row + 1; col < order; col += 1) {
      pairs.push({ row, col });
    }
  }
  return pairs;
}

function reciprocalWire(choice: SaatyChoice): number | string {
  if (typeof choice.wire === 'number') {
    return choice.wire === 1 ? 1 : `1/${choice.wire}`;
  }
  // "1/k" inverts back to the integer k
  return Number(choice.wire.split('/')[1]);
}

/** Numeric full matrix from the ten upper-triangle choices (display + heuristics). */
export function buildMatrix(choices: SaatyChoice[]): number[][] {
  const order = CRITERIA.length;
  const pairs = upperTrianglePairs(order);
  if (choices.length !== pairs.length) {
    throw new Error(`expected ${pairs.length} judgments, got ${choices.length}`);
  }
  const matrix: number[][] = Array.from({ length: order }, (_, i) =>
    Array.from({ length: order }, (_, j) => (i === j ? 1 : 0))
  );
  pairs.forEach((pair, index) => {
    matrix[pair.row][pair.col] = choices[index].value;
    matrix[pair.col][pair.row] = 1 / choices[index].value;
  });
  return matrix;
}

/** Wire payload with exact-fraction strings; reciprocity holds by construction. */
export function matrixPayload(choices: SaatyChoice[]): {
  criteria: string[];
  matrix: Array<Array<number | string>>;
} {
  const order = CRITERIA.length;
  const pairs = upperTrianglePairs(order);
  if (choices.length !== pairs.length) {
    throw new Error(`expected ${pairs.length} judgments, got ${choices.length}`);
  }
  const matrix: Array<Array<number | string>> = Array.from({ length: order }, (_, i) =>
    Array.from({ length: order }, (_, j) => (i === j ? 1 : 0))
  );
  pairs.forEach((pair, index) => {
    matrix[pair.row][pair.col] = choices[index].wire;
    matrix[pair.col][pair.row] = reciprocalWire(choices[index]);
  });
  return { criteria: [...CRITERIA], matrix };
}

export interface OffendingCell {
  row: number;
  col: number;
  stated: number; // the judgment the user entered
  implied: number; // what the derived weights imply for that pair
}

/**
 * The upper-triangle cell whose judgment deviates most from the ratio the
 * derived weights imply (log scale). This is the heuristic highlight shown
 * when the consistency ratio is too high.
 */
export function worstCell(matrix: number[][], weights: Record<string, number>): OffendingCell {
  let worst: OffendingCell | null = null;
  let worstDeviation = -1;
  for (const pair of upperTrianglePairs(matrix.length)) {
    const stated = matrix[pair.row][pair.col];
    const implied = weights[CRITERIA[pair.row]] / weights[CRITERIA[pair.col]];
    const deviation = Math.abs(Math.log(stated / implied));
    if (deviation > worstDeviation) {
      worstDeviation = deviation;
      worst = { row: pair.row, col: pair.col, stated, implied };
    }
  }
  if (worst === null) {
    throw new Error('matrix has no off-diagonal cells');
  }
  return worst;
}

export function defaultChoices(): SaatyChoice[] {
  const indifferent = SAATY_CHOICES.find((choice) => choice.value === 1)!;
  return upperTrianglePairs(CRITERIA.length).map(() => indifferent);
}

export function choiceByLabel(label: string): SaatyChoice {
  const found = SAATY_CHOICES.find((choice) => choice.label === label);
  if (!found) {
    throw new Error(`unknown judgment value ${label}`);
  }
  return found;
}
