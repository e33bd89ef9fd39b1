// Entry point: resolve the service base URL (default local dev port, or the
// ?api= query parameter) and boot the app.

import { ApiClient } from './api.js';
import { App } from './ui.js';

const DEFAULT_BASE_URL = 'http://127.0.0.1:8000';

function resolveBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get('api');
  return (fromQuery ?? DEFAULT_BASE_URL).replace(/\/$/, '');
}

const baseUrl = resolveBaseUrl();
const app = new App(new ApiClient(baseUrl), document, baseUrl);

app.start().catch((error) => {
  const status = document.querySelector('#status');
  if (status) {
    status.textContent = `cannot start: ${error}`;
  }
});
