import { describe, expect, it } from 'vitest';

import type { RankResponse } from '../src/api.js';
import { cardModels, renderCard, renderCards } from '../src/cards.js';
import rawRankResponse from './fixtures/rank_response.json';

const rankResponse = rawRankResponse as unknown as RankResponse;

describe('cardModels', () => {
  it('keeps exactly the service payload order', () => {
    const cards = cardModels(rankResponse);
    expect(cards.map((card) => card.id)).toEqual(rankResponse.results.map((row) => row.id));
    expect(cards.map((card) => card.rank)).toEqual(rankResponse.results.map((row) => row.rank));
  });

  it('bar widths are proportional to the displayed scores', () => {
    for (const card of cardModels(rankResponse)) {
      for (const bar of card.bars) {
        expect(bar.width).toBe(bar.score);
        expect(bar.width).toBeGreaterThanOrEqual(0);
        expect(bar.width).toBeLessThanOrEqual(100);
      }
      expect(card.bars.map((bar) => bar.criterion)).toEqual(['SI', 'NR', 'RA', 'NVR', 'NVP']);
    }
  });

  it('contribution breakdown sums back to the comprehensive score', () => {
    for (const card of cardModels(rankResponse)) {
      expect(card.contributionTotal).toBeCloseTo(card.comprehensive, 9);
      expect(card.contributionTotal.toFixed(2)).toBe(card.displayComprehensive.toFixed(2));
      for (const row of card.contributions) {
        expect(row.weighted).toBeCloseTo(row.weight * row.score, 9);
      }
    }
  });

  it('comprehensive equals the service-reported value untouched', () => {
    const cards = cardModels(rankResponse);
    cards.forEach((card, index) => {
      expect(card.comprehensive).toBe(rankResponse.results[index].comprehensive);
      expect(card.displayComprehensive).toBe(rankResponse.results[index].display.comprehensive);
    });
  });
});

describe('renderCard', () => {
  it('includes rank, total, bars and the breakdown table', () => {
    const card = cardModels(rankResponse)[0];
    const html = renderCard(card, 'http://svc');
    expect(html).toContain(`#${card.rank}`);
    expect(html).toContain(card.displayComprehensive.toFixed(2));
    expect(html.match(/bar-row/g)).toHaveLength(5);
    expect(html).toContain(`/v1/products/${card.id}`);
  });

  it('links the video when present and says so when absent', () => {
    const cards = cardModels(rankResponse);
    const withVideo = cards.find((card) => card.videoUrl !== null);
    const withoutVideo = cards.find((card) => card.videoUrl === null);
    expect(withVideo).toBeDefined();
    expect(renderCard(withVideo!, 'http://svc')).toContain(withVideo!.videoUrl!);
    if (withoutVideo) {
      expect(renderCard(withoutVideo, 'http://svc')).toContain('no video');
    }
  });

  it('escapes markup in product titles', () => {
    const card = {
      ...cardModels(rankResponse)[0],
      title: '<script>alert("x")</script>',
    };
    const html = renderCard(card, 'http://svc');
    expect(html).not.toContain('<script>alert');
    expect(html).toContain('&lt;script&gt;');
  });
});

describe('renderCards', () => {
  it('emits cards in payload order', () => {
    const html = renderCards(rankResponse, 'http://svc');
    const ids = [...html.matchAll(/data-id="([^"]+)"/g)].map((match) => match[1]);
    expect(ids).toEqual(rankResponse.results.map((row) => row.id));
  });
});
