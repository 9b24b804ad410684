/** Browser bootstrap: socket, canvas loop, DOM overlays. */

import { CueAudio } from "./audio.js";
import type { Camera } from "./camera.js";
import { fitCamera } from "./camera.js";
import { ClientController } from "./controller.js";
import { GestureDetector } from "./gestures.js";
import { Connection } from "./net.js";
import type { Canvas2D } from "./renderer.js";
import { render } from "./renderer.js";
import { applyMessage, initialViewState, overlayFor } from "./store.js";

const WORLD_HALF_WIDTH = 85; // angstroms visible either side of centre
const WORLD_HALF_HEIGHT = 65;

function main(): void {
  const canvas = document.getElementById("scene") as HTMLCanvasElement;
  const overlayRoot = document.getElementById("overlay") as HTMLDivElement;
  const infoButton = document.getElementById("info-button") as HTMLButtonElement;
  const audioButton = document.getElementById("audio-button") as HTMLButtonElement;

  const view = initialViewState();
  const audio = new CueAudio();
  let camera: Camera = fitCamera(
    canvas.width, canvas.height, WORLD_HALF_WIDTH, WORLD_HALF_HEIGHT);

  const resize = (): void => {
    canvas.width = canvas.clientWidth;
    canvas.height = canvas.clientHeight;
    camera = fitCamera(canvas.width, canvas.height, WORLD_HALF_WIDTH, WORLD_HALF_HEIGHT);
  };
  window.addEventListener("resize", resize);

  const protocol = location.protocol === "https:" ? "wss" : "ws";
  const socket = new WebSocket(`${protocol}://${location.host}/session`);
  const connection = new Connection(
    { send: (data) => socket.send(data), close: () => socket.close() },
    (msg) => {
      for (const cue of applyMessage(view, msg, performance.now())) {
        audio.play(cue);
      }
      syncOverlay();
    },
    (detail) => console.warn("protocol:", detail),
  );
  socket.addEventListener("open", () => connection.join("default"));
  socket.addEventListener("message", (event) => connection.receive(String(event.data)));

  const controller = new ClientController(connection, view, () => camera);
  const gestures = new GestureDetector({
    hitTest: (px, py) => controller.hitTest(px, py),
    onDrag: (index, dx, dy) => controller.onDrag(index, dx, dy),
    onDoubleTap: (index) => controller.onDoubleTap(index),
  });

  const point = (event: PointerEvent): [number, number] => {
    const rect = canvas.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  };
  canvas.addEventListener("pointerdown", (e) => {
    canvas.setPointerCapture(e.pointerId);
    gestures.pointerDown(...point(e), e.timeStamp);
  });
  canvas.addEventListener("pointermove", (e) => gestures.pointerMove(...point(e), e.timeStamp));
  canvas.addEventListener("pointerup", (e) => gestures.pointerUp(...point(e), e.timeStamp));

  infoButton.addEventListener("click", () => controller.requestInfo());
  audioButton.addEventListener("click", () => {
    audioButton.textContent = audio.toggle() ? "\u{1F50A}" : "\u{1F507}";
  });

  let overlayKey = "";
  function syncOverlay(): void {
    const model = overlayFor(view);
    const key = model ? JSON.stringify([model.kind, model.title, model.lines]) : "";
    if (key === overlayKey) return;
    overlayKey = key;
    overlayRoot.replaceChildren();
    overlayRoot.classList.toggle("hidden", model === null);
    if (!model) return;
    const panel = document.createElement("div");
    panel.className = `panel panel-${model.kind}`;
    const title = document.createElement("h2");
    title.textContent = model.title;
    panel.appendChild(title);
    for (const line of model.lines) {
      const p = document.createElement("p");
      p.textContent = line;
      panel.appendChild(p);
    }
    for (const button of model.buttons) {
      const el = document.createElement("button");
      el.textContent = button.label;
      el.addEventListener("click", () => {
        controller.overlayAction(button.action);
        if (button.action.type === "acknowledge") syncOverlay();
      });
      panel.appendChild(el);
    }
    overlayRoot.appendChild(panel);
  }

  const ctx = canvas.getContext("2d") as unknown as Canvas2D;
  function frame(now: number): void {
    render(ctx, view, camera, { width: canvas.width, height: canvas.height, nowMs: now });
    requestAnimationFrame(frame);
  }
  resize();
  requestAnimationFrame(frame);
}

main();
