"""WebSocket host for the session protocol plus static client files.

One socket connection = one session.  The server owns the clock (ticks at
the runner's rate); tick_ack messages from the client only acknowledge
snapshots.  Requires the `server` extra (fastapi + uvicorn + websockets).
"""

from __future__ import annotations

import asyncio
import logging
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles

from . import protocol
from .game import DEFAULT_CONFIG, GameConfig
from .levels import LevelPack
from .quiz import QuizBank
from .runner import SessionRunner

log = logging.getLogger(__name__)


def create_app(
    pack: LevelPack,
    bank: QuizBank | None = None,
    config: GameConfig = DEFAULT_CONFIG,
    static_dir: Path | None = None,
) -> FastAPI:
    app = FastAPI(title="dockslice session server")

    @app.websocket("/session")
    async def session_endpoint(ws: WebSocket):
        await ws.accept()
        runner = SessionRunner(pack, bank=bank, config=config, server_clock=True)

        async def send_all(messages):
            for msg in messages:
                await ws.send_text(protocol.encode(msg).decode())

        async def ticker():
            while True:
                await asyncio.sleep(runner.dt)
                if runner.session is not None:
                    await send_all(runner.tick())

        tick_task = asyncio.create_task(ticker())
        try:
            while True:
                line = await ws.receive_text()
                await send_all(runner.handle_line(line))
        except WebSocketDisconnect:
            pass
        finally:
            tick_task.cancel()

    @app.get("/healthz")
    async def healthz():
        return {"ok": True, "pack_id": pack.pack_id}

    if static_dir is not None and static_dir.exists():
        @app.get("/")
        async def index():
            return FileResponse(static_dir / "index.html")

        app.mount("/", StaticFiles(directory=static_dir), name="static")
    return app
