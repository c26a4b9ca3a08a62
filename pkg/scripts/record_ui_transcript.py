#!/usr/bin/env python3
"""Record a scripted live-play session for the web client's tests.

Drives the real service in-process: a human seat (player 1) against a
greedy bot, from a crafted deal holding the Spectrum set. The human plays
one exchange and one Spectrum; the bot's cancellation-forced draw and the
game end all land in the transcript. Output is a list of
{"dir": "send"|"recv", "msg": ...} entries from the human's perspective,
written to frontend/test/fixtures/transcript.json.
"""

import json
import sys
from pathlib import Path

from starlette.testclient import TestClient

from aljabar.service import SessionManager, build_app

OUT = Path(__file__).resolve().parents[1] / "frontend" / "test" / "fixtures"

SETUP = {
    "hands": [["G", "G", "G", "G"], ["R", "R", "B", "Y", "W", "G"]],
    "center": "W",
}


def main():
    transcript = []

    def send(ws, msg):
        transcript.append({"dir": "send", "msg": msg})
        ws.send_json(msg)

    def recv_until(ws, kind):
        while True:
            msg = ws.receive_json()
            transcript.append({"dir": "recv", "msg": msg})
            if msg["kind"] == kind:
                return msg

    manager = SessionManager()
    client = TestClient(build_app(manager))
    body = client.post("/sessions", json={
        "seed": 3, "seats": ["greedy", "human"], "setup": SETUP}).json()
    token = body["seats"][1]["token"]
    session = body["session"]

    with client.websocket_connect("/ws") as ws:
        send(ws, {"kind": "join", "payload": {"session": session,
                                              "token": token}})
        recv_until(ws, "state")
        send(ws, {"kind": "legal_moves", "payload": {}})
        recv_until(ws, "legal_moves")
        send(ws, {"kind": "submit_move", "payload": {
            "move": {"type": "exchange", "give": ["R", "G"], "take": ["W"]}}})
        recv_until(ws, "move_result")
        recv_until(ws, "state")   # after the human's exchange
        recv_until(ws, "state")   # after the bot's reply
        send(ws, {"kind": "submit_move",
                  "payload": {"move": {"type": "spectrum"}}})
        recv_until(ws, "move_result")
        recv_until(ws, "game_over")

    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / "transcript.json"
    path.write_text(json.dumps(transcript, indent=1, sort_keys=True) + "\n",
                    encoding="utf-8")
    kinds = [e["msg"]["kind"] for e in transcript if e["dir"] == "recv"]
    events = [e["msg"]["payload"]["event"]["kind"] for e in transcript
              if e["dir"] == "recv" and e["msg"]["kind"] == "event"]
    print(f"wrote {path} ({len(transcript)} entries)")
    print("message kinds:", " ".join(kinds))
    print("event kinds:", " ".join(events))
    if "forced_draw" not in events or "spectrum" not in events:
        print("transcript is missing required events!", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
