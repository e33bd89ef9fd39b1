// Result cards: view models and HTML for the ranked list. Card order always
// mirrors the service payload order, and the contribution breakdown shown in
// an expanded card is exactly the service's numbers (they sum back to the
// comprehensive score; nothing is recomputed here).

import type { RankResponse, RankedRow } from './api.js';
import { CRITERIA, CRITERION_NAMES } from './matrix.js';

export interface ScoreBar {
  criterion: string;
  name: string;
  score: number; // 0..100, two-decimal display value
  width: number; // percentage width, proportional to the score
}

export interface ContributionRow {
  criterion: string;
  score: number;
  weight: number;
  weighted: number;
}

export interface CardModel {
  id: string;
  rank: number;
  title: string;
  price: number;
  rating: number;
  comprehensive: number; // full-precision service value
  displayComprehensive: number;
  bars: ScoreBar[];
  contributions: ContributionRow[];
  contributionTotal: number;
  videoUrl: string | null;
}

export function cardModel(row: RankedRow, weights: Record<string, number>): CardModel {
  const bars = CRITERIA.map((criterion) => ({
    criterion,
    name: CRITERION_NAMES[criterion],
    score: row.display.scores[criterion.toLowerCase()],
    width: row.display.scores[criterion.toLowerCase()],
  }));
  const contributions = CRITERIA.map((criterion) => ({
    criterion,
    score: row.scores[criterion.toLowerCase()],
    weight: weights[criterion],
    weighted: row.contributions[criterion],
  }));
  return {
    id: row.id,
    rank: row.rank,
    title: row.title,
    price: row.price,
    rating: row.rating,
    comprehensive: row.comprehensive,
    displayComprehensive: row.display.comprehensive,
    bars,
    contributions,
    contributionTotal: contributions.reduce((sum, item) => sum + item.weighted, 0),
    videoUrl: row.video_url,
  };
}

/** One card per result, in the exact order the service returned them. */
export function cardModels(payload: RankResponse): CardModel[] {
  return payload.results.map((row) => cardModel(row, payload.weights));
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderBar(bar: ScoreBar): string {
  return `
    <div class="bar-row" data-criterion="${bar.criterion}">
      <span class="bar-label" title="${bar.name}">${bar.criterion}</span>
      <div class="bar-track">
        <div class="bar-fill" style="width: ${bar.width}%"></div>
      </div>
      <span class="bar-value">${bar.score.toFixed(2)}</span>
    </div>`;
}

export function renderCard(card: CardModel, detailBaseUrl: string): string {
  const videoLink = card.videoUrl
    ? `<a class="card-link" href="${escapeHtml(card.videoUrl)}" target="_blank" rel="noopener">video</a>`
    : '<span class="card-link card-link-disabled">no video</span>';
  const detailLink = `<a class="card-link" href="${detailBaseUrl}/v1/products/${encodeURIComponent(
    card.id
  )}" target="_blank" rel="noopener">details</a>`;
  const breakdown = card.contributions
    .map(
      (row) => `
      <tr>
        <td>${row.criterion}</td>
        <td>${row.score.toFixed(2)}</td>
        <td>${row.weight.toFixed(4)}</td>
        <td>${row.weighted.toFixed(2)}</td>
      </tr>`
    )
    .join('');
  return `
  <article class="card" data-id="${escapeHtml(card.id)}" data-rank="${card.rank}">
    <header class="card-header">
      <span class="card-rank">#${card.rank}</span>
      <h3 class="card-title">${escapeHtml(card.title)}</h3>
      <span class="card-total">${card.displayComprehensive.toFixed(2)}</span>
    </header>
    <p class="card-meta">price ${card.price}  ·  rating ${card.rating}  ·  ${videoLink}  ·  ${detailLink}</p>
    <div class="card-bars">${card.bars.map(renderBar).join('')}</div>
    <details class="card-breakdown">
      <summary>why this score?</summary>
      <table>
        <thead><tr><th>criterion</th><th>score</th><th>weight</th><th>contribution</th></tr></thead>
        <tbody>${breakdown}</tbody>
        <tfoot><tr><td colspan="3">comprehensive</td><td>${card.contributionTotal.toFixed(2)}</td></tr></tfoot>
      </table>
    </details>
  </article>`;
}

export function renderCards(payload: RankResponse, detailBaseUrl: string): string {
  return cardModels(payload)
    .map((card) => renderCard(card, detailBaseUrl))
    .join('\n');
}
