import { GameClient } from "./client.js";
import { WebSocketTransport } from "./transport.js";
import { render } from "./ui.js";

/** Entry point: ?session=...&token=... joins a table (token optional for
 * spectating); without a session a small lobby form creates one. */

function wsUrl(): string {
  const scheme = window.location.protocol === "https:" ? "wss" : "ws";
  return `${scheme}://${window.location.host}/ws`;
}

function startGame(root: HTMLElement, session: string, token?: string): void {
  const client: GameClient = new GameClient(
    new WebSocketTransport(wsUrl()),
    () => render(client, root),
  );
  client.join(session, token);
  render(client, root);
}

async function createSession(root: HTMLElement, players: number,
                             bots: number): Promise<void> {
  const seats = Array.from({ length: players }, (_, i) =>
    i >= players - bots ? "greedy" : "human",
  );
  const resp = await fetch("/sessions", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ players, seats }),
  });
  if (!resp.ok) {
    const detail = await resp.json().catch(() => ({ detail: resp.statusText }));
    root.appendChild(document.createElement("p")).textContent =
      `could not create session: ${detail.detail}`;
    return;
  }
  const body = await resp.json();
  const list = document.createElement("div");
  list.className = "seat-links";
  for (const seat of body.seats) {
    const p = document.createElement("p");
    if (seat.token) {
      const link = document.createElement("a");
      link.href = `?session=${body.session}&token=${seat.token}`;
      link.textContent = `seat ${seat.player}: join as player ${seat.player}`;
      p.appendChild(link);
    } else {
      p.textContent = `seat ${seat.player}: ${seat.kind} bot`;
    }
    list.appendChild(p);
  }
  const spect = document.createElement("p");
  const spectLink = document.createElement("a");
  spectLink.href = `?session=${body.session}`;
  spectLink.textContent = "spectate";
  spect.appendChild(spectLink);
  list.appendChild(spect);
  root.textContent = "share these links, then take your seat:";
  root.appendChild(list);
}

function lobby(root: HTMLElement): void {
  root.textContent = "";
  const form = document.createElement("form");
  form.className = "lobby";
  form.innerHTML = `
    <h2>new table</h2>
    <label>players <input name="players" type="number" value="2" min="2" max="4"></label>
    <label>of which bots <input name="bots" type="number" value="1" min="0" max="3"></label>
    <button type="submit">create</button>`;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    void createSession(
      root,
      Number(data.get("players")),
      Number(data.get("bots")),
    );
  });
  root.appendChild(form);
}

const root = document.getElementById("app");
if (root) {
  const params = new URLSearchParams(window.location.search);
  const session = params.get("session");
  if (session) startGame(root, session, params.get("token") ?? undefined);
  else lobby(root);
}
