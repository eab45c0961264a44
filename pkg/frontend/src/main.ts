/**
 * Browser entry point. The center user comes from the `id` query parameter
 * and the service base URL from `service` (defaulting to the page origin),
 * e.g. index.html?id=users/18&service=http://127.0.0.1:8000
 */

import { SpheresApp } from './app.js';

function bootstrap(): void {
  const params = new URLSearchParams(window.location.search);
  const centerId = params.get('id');
  const baseUrl = params.get('service') ?? window.location.origin;
  const notice = document.getElementById('notice');
  if (!centerId) {
    if (notice) {
      notice.textContent = 'missing ?id=<user id> query parameter';
    }
    return;
  }
  const app = new SpheresApp({ baseUrl, centerId, document });
  const reportButton = document.getElementById('go-to-recommender');
  reportButton?.addEventListener('click', () => {
    void app.showReport();
  });
  app.start().catch((error) => {
    if (notice) {
      notice.textContent = String(error);
    }
  });
}

bootstrap();
