// Small state helpers: latest-wins request sequencing (stale responses are
// dropped) and input debouncing. One ticket stream per endpoint keeps an
// out-of-order response from clobbering newer state.

import type { ProductSummary, WeightsResponse } from './api.js';

export class LatestWins {
  private sequence = 0;

  next(): number {
    this.sequence += 1;
    return this.sequence;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.sequence;
  }
}

export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  waitMs: number
): (...args: Args) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: Args) => {
    if (timer !== undefined) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => fn(...args), waitMs);
  };
}

export interface AppState {
  sessionId: string | null;
  weights: WeightsResponse | null;
  reference: ProductSummary | null;
}

export interface ConsistencyBadge {
  text: string;
  ok: boolean;
  warning: string | null;
}

/** Badge for the live consistency readout next to the grid. */
export function consistencyBadge(weights: WeightsResponse | null): ConsistencyBadge {
  if (weights === null) {
    return { text: 'no judgments yet', ok: false, warning: null };
  }
  const cr = weights.cr.toFixed(3);
  if (weights.acceptable) {
    return { text: `CR ${cr} ✓`, ok: true, warning: null };
  }
  return {
    text: `CR ${cr} ✗`,
    ok: false,
    warning:
      weights.advisory ??
      `consistency ratio ${cr} exceeds 0.1; revise the highlighted judgment`,
  };
}

/** Generation requires a reference and an acceptably consistent matrix. */
export function generateEnabled(state: AppState): boolean {
  return state.reference !== null && state.weights !== null && state.weights.acceptable;
}

/** Guided prompt for a 409 from the rank endpoint. */
export function missingStepPrompt(code: string): string {
  switch (code) {
    case 'missing_reference':
      return 'paste a product id or link first, then generate';
    case 'missing_matrix':
      return 'fill in the pairwise comparisons first, then generate';
    case 'no_candidates':
      return 'no related products found for this reference';
    default:
      return 'complete the missing step, then generate again';
  }
}
