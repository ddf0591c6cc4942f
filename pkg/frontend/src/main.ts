// Page bootstrap: read config from query parameters, fetch the EFSM
// export, run the placement flow, then play over a real WebSocket.
//
//   index.html?server=ws://localhost:8765/battleship&role=P2

import { BattleshipClient, FrameSocket } from "./client.js";
import { parseEfsm } from "./efsm.js";
import { Ui } from "./ui.js";

function browserSocket(url: string): Promise<FrameSocket> {
  const ws = new WebSocket(url);
  let frameHandler: (text: string) => void = () => undefined;
  let closeHandler: () => void = () => undefined;
  ws.addEventListener("message", (event) => {
    if (typeof event.data === "string") frameHandler(event.data);
  });
  ws.addEventListener("close", () => closeHandler());
  const socket: FrameSocket = {
    send: (text) => ws.send(text),
    close: () => ws.close(),
    onFrame: (handler) => {
      frameHandler = handler;
    },
    onClose: (handler) => {
      closeHandler = handler;
    },
  };
  return new Promise((resolve, reject) => {
    ws.addEventListener("open", () => resolve(socket));
    ws.addEventListener("error", () => reject(new Error(`cannot reach ${url}`)));
  });
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const server = params.get("server") ?? "ws://127.0.0.1:8765/battleship";
  const role = params.get("role") ?? "P2";
  const efsmPath = params.get("efsm") ?? `public/efsm/BattleShips_${role}.json`;

  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const ui = new Ui(root);

  const efsm = parseEfsm(await (await fetch(efsmPath)).json());
  const config = await ui.placeShips();
  ui.showPlayBoards();

  let socket: FrameSocket;
  try {
    socket = await browserSocket(server);
  } catch (err) {
    ui.protocolError(String(err));
    return;
  }

  const client = new BattleshipClient(efsm, socket, config, {
    chooseAttack: () => ui.chooseAttack(),
    onUpdate: (view) => ui.repaint(view),
    onProtocolError: (message) => ui.protocolError(message),
  });
  try {
    const result = await client.play();
    ui.say(result === "won" ? "victory!" : "defeat.");
  } catch {
    // the banner already shows the reason
  }
}

window.addEventListener("DOMContentLoaded", () => {
  void start();
});
