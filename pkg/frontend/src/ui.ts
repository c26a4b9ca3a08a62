import type { GameClient } from "./client.js";
import type { EngineEvent } from "./protocol.js";

/** Straight DOM rendering of the client state; re-rendered wholesale on
 * every change (tables are tiny). */

function el(
  tag: string,
  className?: string,
  text?: string,
): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function pieceChip(
  client: GameClient,
  code: string,
  opts: { selected?: boolean; onClick?: () => void } = {},
): HTMLElement {
  const palette = client.palette!;
  const chip = el("button", "piece", code);
  chip.title = palette.names[code] ?? code;
  chip.style.background = palette.swatches[code] ?? "#888";
  const bright = code === "W" || code === "K" ? "#111" : "#fff";
  chip.style.color = code === "K" ? "#eee" : bright;
  if (opts.selected) chip.classList.add("selected");
  if (opts.onClick) chip.addEventListener("click", opts.onClick);
  else (chip as HTMLButtonElement).disabled = true;
  return chip;
}

function describeEvent(event: EngineEvent): string {
  switch (event.kind) {
    case "deal":
      return `player ${event["player"]} was dealt ${(event["pieces"] as string[]).length} pieces`;
    case "center_init":
      return `the Center opens with ${event["piece"]} + K`;
    case "draw":
      return `player ${event["player"]} drew ${event["piece"]} from the bag`;
    case "exchange":
      return `player ${event["player"]} gave ${(event["give"] as string[]).join("+")} for ${(event["take"] as string[]).join("+")}`;
    case "spectrum":
      return `player ${event["player"]} played the Spectrum`;
    case "pass":
      return `player ${event["player"]} passed`;
    case "cancellation":
      return `${event["tuples"]}x ${event["color"]} canceled${event["exempt"] ? " (own set: no forced draws)" : ""}`;
    case "forced_draw":
      return `player ${event["player"]} must take ${event["count"]} black/clear`;
    case "final_signal":
      return `final round! (player ${event["player"]}, ${String(event["cause"]).replace("_", " ")})`;
    case "game_end":
      return `game over - winners: ${(event["winners"] as number[]).join(", ")}`;
    default:
      return event.kind;
  }
}

export function render(client: GameClient, root: HTMLElement): void {
  root.textContent = "";
  if (!client.connected) {
    const banner = el("div", "banner error", "connection lost - ");
    const retry = el("a", "", "reconnect");
    retry.setAttribute("href", window.location.href);
    banner.appendChild(retry);
    root.appendChild(banner);
  }
  if (client.palette === null || client.state === null) {
    root.appendChild(el("p", "muted", "waiting for the table..."));
    return;
  }
  const state = client.state;

  if (state.final_round !== null && !state.finished) {
    const trigger = state.final_trigger;
    root.appendChild(
      el(
        "div",
        "banner final",
        `final round - signaled by player ${trigger?.player} (${trigger?.cause.replace("_", " ")})`,
      ),
    );
  }
  if (client.gameOver) {
    root.appendChild(
      el(
        "div",
        "banner over",
        `game over - winner(s): ${client.gameOver.winners.join(", ")} ` +
          `(hands: ${client.gameOver.hand_sizes.join(", ")})`,
      ),
    );
  }
  if (client.lastError) {
    root.appendChild(el("div", "banner error", client.lastError));
  }
  if (client.lostBroadcast) {
    root.appendChild(
      el("div", "banner error", "missed a broadcast - reload to resync"),
    );
  }

  const table = el("div", "table");
  root.appendChild(table);

  // Hands are public: render all of them.
  for (const seat of client.seats) {
    const hand = state.hands[seat.player] ?? [];
    const row = el("div", "hand-row");
    const isTurn = state.turn === seat.player && !state.finished;
    const label =
      `player ${seat.player} (${seat.kind})` +
      (seat.player === client.seat ? " (you)" : "") +
      (isTurn ? " (to act)" : "");
    row.appendChild(el("div", isTurn ? "label turn" : "label", label));
    const pieces = el("div", "pieces");
    const mine = seat.player === client.seat;
    const selectedLeft = new Map<string, number>();
    for (const code of client.giveSelection) {
      selectedLeft.set(code, (selectedLeft.get(code) ?? 0) + 1);
    }
    for (const code of hand) {
      let selected = false;
      if (mine && (selectedLeft.get(code) ?? 0) > 0) {
        selected = true;
        selectedLeft.set(code, selectedLeft.get(code)! - 1);
      }
      pieces.appendChild(
        pieceChip(client, code, {
          selected,
          onClick: mine
            ? () => {
                if (selected) client.removeGive(code);
                else if (!client.addGive(code)) {
                  client.lastError = `you may give at most ${client.n} pieces`;
                }
              }
            : undefined,
        }),
      );
    }
    row.appendChild(pieces);
    table.appendChild(row);
  }

  // The Center.
  const centerRow = el("div", "hand-row center");
  centerRow.appendChild(
    el("div", "label", `Center - bag: ${state.bag_total} pieces left`),
  );
  const centerPieces = el("div", "pieces");
  const takeLeft = new Map<string, number>();
  for (const code of client.takeSelection) {
    takeLeft.set(code, (takeLeft.get(code) ?? 0) + 1);
  }
  for (const code of state.center) {
    let selected = false;
    if ((takeLeft.get(code) ?? 0) > 0) {
      selected = true;
      takeLeft.set(code, takeLeft.get(code)! - 1);
    }
    centerPieces.appendChild(
      pieceChip(client, code, {
        selected,
        onClick: () => {
          if (selected) client.removeTake(code);
          else if (!client.addTake(code)) {
            client.lastError = `you may take at most ${client.n} pieces`;
          }
        },
      }),
    );
  }
  centerRow.appendChild(centerPieces);
  table.appendChild(centerRow);

  // Selection summary + actions.
  const status = client.selectionStatus();
  const panel = el("div", "panel");
  const sums = el(
    "div",
    "sums",
    `give ${client.giveSelection.join("+") || "(none)"} = ${status.giveSum ?? "?"}` +
      `  |  take ${client.takeSelection.join("+") || "(none)"} = ${status.takeSum ?? "?"}`,
  );
  if (status.sumsMatch) sums.classList.add("match");
  panel.appendChild(sums);
  if (status.warning) panel.appendChild(el("div", "warning", status.warning));

  const actions = el("div", "actions");
  const mkButton = (
    label: string,
    enabled: boolean,
    onClick: () => void,
  ): HTMLButtonElement => {
    const b = el("button", "action", label) as HTMLButtonElement;
    b.disabled = !enabled;
    b.addEventListener("click", onClick);
    actions.appendChild(b);
    return b;
  };
  const myTurn = client.myTurn();
  mkButton("exchange", myTurn && status.canSubmit, () =>
    client.submitExchange(),
  );
  mkButton("spectrum", myTurn && client.canSpectrum(), () =>
    client.submitSpectrum(),
  );
  mkButton("draw", myTurn && state.bag_total > 0, () => client.submitDraw(1));
  mkButton("announce final round", client.canAnnounce(), () =>
    client.announceFinal(),
  );
  mkButton("pass", myTurn && state.final_round !== null, () =>
    client.submitPass(),
  );
  mkButton("hints", true, () => client.requestHints(10));
  mkButton("clear", true, () => {
    client.clearSelection();
    render(client, root);
  });
  panel.appendChild(actions);

  if (client.hints) {
    const hintBox = el("div", "hints");
    if (client.hints.must_draw) {
      hintBox.appendChild(
        el("div", "warning", "no legal move - you must draw from the bag"),
      );
    }
    for (const move of client.hints.moves.slice(0, 10)) {
      const text =
        move.type === "exchange"
          ? `give ${move.give.join("+")} for ${move.take.join("+")}`
          : move.type;
      hintBox.appendChild(el("div", "hint", text));
    }
    panel.appendChild(hintBox);
  }
  table.appendChild(panel);

  // Event feed, newest first.
  const feed = el("div", "feed");
  feed.appendChild(el("div", "label", "events"));
  for (const event of [...client.events].reverse().slice(0, 30)) {
    feed.appendChild(el("div", "feed-item", describeEvent(event)));
  }
  table.appendChild(feed);
}
