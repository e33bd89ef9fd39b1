// DOM layer: renders the comparison grid, consistency badge, reference panel
// and result cards, and wires them to the API client. The render helpers
// return HTML strings so behavior is testable without a browser.

import { ApiClient, ApiError, Method, ProductSummary, RankResponse } from './api.js';
import { renderCards } from './cards.js';
import {
  CRITERIA,
  CRITERION_NAMES,
  SAATY_CHOICES,
  SaatyChoice,
  buildMatrix,
  choiceByLabel,
  defaultChoices,
  matrixPayload,
  upperTrianglePairs,
  worstCell,
} from './matrix.js';
import {
  AppState,
  LatestWins,
  consistencyBadge,
  debounce,
  generateEnabled,
  missingStepPrompt,
} from './state.js';

export const METHODS: Array<{ id: Method; label: string }> = [
  { id: 'ahp', label: 'your weights' },
  { id: 'equal_weights', label: 'equal weights' },
  { id: 'similarity_only', label: 'similarity only' },
];

export function renderGrid(choices: SaatyChoice[]): string {
  const pairs = upperTrianglePairs(CRITERIA.length);
  const rows = pairs
    .map((pair, index) => {
      const options = SAATY_CHOICES.map(
        (choice) =>
          `<option value="${choice.label}"${
            choice.label === choices[index].label ? ' selected' : ''
          }>${choice.label}</option>`
      ).join('');
      const left = CRITERIA[pair.row];
      const right = CRITERIA[pair.col];
      return `
      <tr class="grid-row" data-cell="${pair.row}-${pair.col}">
        <td title="${CRITERION_NAMES[left]}">${left}</td>
        <td><select class="judgment" data-index="${index}">${options}</select></td>
        <td title="${CRITERION_NAMES[right]}">${right}</td>
      </tr>`;
    })
    .join('');
  return `
    <table class="grid">
      <thead><tr><th>this…</th><th>vs</th><th>…that</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>`;
}

export function renderReferencePanel(product: ProductSummary | null, error: string | null): string {
  if (error) {
    return `<p class="reference-error">${error}</p>`;
  }
  if (!product) {
    return '<p class="reference-idle">paste a product id or link above</p>';
  }
  return `
    <div class="reference-card">
      <h3>${product.title}</h3>
      <p>price ${product.price} · rating ${product.rating} · ${product.review_count} reviews</p>
    </div>`;
}

export class App {
  readonly state: AppState = { sessionId: null, weights: null, reference: null };
  private choices: SaatyChoice[] = defaultChoices();
  private method: Method = 'ahp';
  private readonly comparisonsGate = new LatestWins();
  private readonly referenceGate = new LatestWins();
  private readonly rankGate = new LatestWins();

  constructor(
    private readonly api: ApiClient,
    private readonly root: Document,
    private readonly apiBaseUrl: string
  ) {}

  async start(): Promise<void> {
    const session = await this.api.createSession();
    this.state.sessionId = session.id;
    this.renderStaticShell();
    await this.submitComparisons(); // uniform defaults give CR 0 immediately
  }

  private element<T extends HTMLElement>(selector: string): T {
    const found = this.root.querySelector<T>(selector);
    if (!found) {
      throw new Error(`missing element ${selector}`);
    }
    return found;
  }

  private renderStaticShell(): void {
    this.element('#grid').innerHTML = renderGrid(this.choices);
    this.element('#methods').innerHTML = METHODS.map(
      (method) =>
        `<label><input type="radio" name="method" value="${method.id}"${
          method.id === this.method ? ' checked' : ''
        }> ${method.label}</label>`
    ).join('');

    this.root.querySelectorAll<HTMLSelectElement>('select.judgment').forEach((select) => {
      select.addEventListener('change', () => {
        const index = Number(select.dataset.index);
        this.choices[index] = choiceByLabel(select.value);
        void this.submitComparisons();
      });
    });

    const referenceInput = this.element<HTMLInputElement>('#reference-input');
    const lookup = debounce(() => void this.resolveReference(referenceInput.value), 300);
    referenceInput.addEventListener('input', lookup);

    this.root.querySelectorAll<HTMLInputElement>('input[name="method"]').forEach((radio) => {
      radio.addEventListener('change', () => {
        this.method = radio.value as Method;
        void this.generate();
      });
    });

    this.element('#generate').addEventListener('click', () => void this.generate());
    this.refreshControls();
  }

  async submitComparisons(): Promise<void> {
    if (!this.state.sessionId) return;
    const ticket = this.comparisonsGate.next();
    try {
      const response = await this.api.submitComparisons(
        this.state.sessionId,
        matrixPayload(this.choices)
      );
      if (!this.comparisonsGate.isCurrent(ticket)) return; // stale
      this.state.weights = response;
      this.clearCellHighlights();
      if (!response.acceptable) {
        const cell = worstCell(buildMatrix(this.choices), response.weights);
        this.highlightCell(cell.row, cell.col);
      }
    } catch (error) {
      if (!this.comparisonsGate.isCurrent(ticket)) return;
      this.state.weights = null;
      this.showStatus(error instanceof ApiError ? error.message : String(error));
    }
    this.refreshControls();
  }

  async resolveReference(key: string): Promise<void> {
    if (!this.state.sessionId) return;
    const panel = this.element('#reference-panel');
    const trimmed = key.trim();
    if (!trimmed) {
      this.state.reference = null;
      panel.innerHTML = renderReferencePanel(null, null);
      this.refreshControls();
      return;
    }
    const ticket = this.referenceGate.next();
    try {
      const product = await this.api.setReference(this.state.sessionId, trimmed);
      if (!this.referenceGate.isCurrent(ticket)) return;
      this.state.reference = product;
      panel.innerHTML = renderReferencePanel(product, null);
    } catch (error) {
      if (!this.referenceGate.isCurrent(ticket)) return;
      this.state.reference = null;
      const message =
        error instanceof ApiError && error.status === 404
          ? 'no product matches that id or link'
          : error instanceof ApiError
            ? error.message
            : String(error);
      panel.innerHTML = renderReferencePanel(null, message);
    }
    this.refreshControls();
  }

  async generate(): Promise<void> {
    if (!this.state.sessionId) return;
    const ticket = this.rankGate.next();
    this.showStatus('generating…');
    try {
      const payload = await this.api.rank(this.state.sessionId, this.method, 10);
      if (!this.rankGate.isCurrent(ticket)) return;
      this.renderResults(payload);
      this.showStatus('');
    } catch (error) {
      if (!this.rankGate.isCurrent(ticket)) return;
      if (error instanceof ApiError && error.status === 409) {
        this.showStatus(missingStepPrompt(error.code));
      } else {
        this.showStatus(error instanceof ApiError ? error.message : String(error));
      }
    }
  }

  renderResults(payload: RankResponse): void {
    this.element('#cards').innerHTML = renderCards(payload, this.apiBaseUrl);
  }

  refreshControls(): void {
    const badge = consistencyBadge(this.state.weights);
    const badgeElement = this.element('#consistency-badge');
    badgeElement.textContent = badge.text;
    badgeElement.className = badge.ok ? 'badge badge-ok' : 'badge badge-warn';

    const warning = this.element('#consistency-warning');
    warning.textContent = badge.warning ?? '';

    const button = this.element<HTMLButtonElement>('#generate');
    button.disabled = !generateEnabled(this.state);
    button.title = button.disabled
      ? 'needs a reference product and an acceptably consistent matrix (CR <= 0.1)'
      : 'rank related products';
  }

  private clearCellHighlights(): void {
    this.root.querySelectorAll('.grid-row.offending').forEach((row) => {
      row.classList.remove('offending');
    });
  }

  private highlightCell(row: number, col: number): void {
    this.root.querySelector(`.grid-row[data-cell="${row}-${col}"]`)?.classList.add('offending');
  }

  private showStatus(message: string): void {
    this.element('#status').textContent = message;
  }
}
