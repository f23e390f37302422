// Entry point: mounts the game and the stats view against one service.
// The API base URL comes from ?api=... or defaults to same-origin.

import { ApiClient } from "./api.js";
import { renderChart } from "./chart.js";
import { GameView } from "./game.js";

export function mountApp(root: HTMLElement, baseUrl: string): GameView {
  root.innerHTML = `
    <h1>clozelab</h1>
    <nav>
      <button type="button" data-testid="tab-play">play</button>
      <button type="button" data-testid="tab-stats">stats</button>
    </nav>
    <section data-testid="play-pane"></section>
    <section data-testid="stats-pane" class="hidden"></section>
  `;
  const api = new ApiClient(baseUrl);
  const playPane = root.querySelector('[data-testid="play-pane"]') as HTMLElement;
  const statsPane = root.querySelector('[data-testid="stats-pane"]') as HTMLElement;
  const game = new GameView(api, playPane);

  root.querySelector('[data-testid="tab-play"]')!.addEventListener("click", () => {
    playPane.classList.remove("hidden");
    statsPane.classList.add("hidden");
  });
  root.querySelector('[data-testid="tab-stats"]')!.addEventListener("click", () => {
    playPane.classList.add("hidden");
    statsPane.classList.remove("hidden");
    game.pending = api
      .analysis({ unit: "chars" })
      .then((snapshot) => renderChart(snapshot, statsPane))
      .catch(() => {
        statsPane.textContent = "stats unavailable";
      });
  });

  game.pending = game.start();
  return game;
}

declare global {
  interface Window {
    clozelabGame?: GameView;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("api") ?? "";
  window.clozelabGame = mountApp(document.getElementById("app")!, base);
}
