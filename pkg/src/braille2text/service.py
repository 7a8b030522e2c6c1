"""Local HTTP service: keypad sessions, page conversion, synthesis.

The browser keypad talks to this over localhost JSON; the command line
is a thin client of the same endpoints.  Sessions live in memory, one
KeypadSession per id, and every mutation of a session happens under its
own lock so interleaved requests cannot corrupt the pending cell.
"""

from __future__ import annotations

import base64
import threading
import time
import uuid
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .config import ConfigError, apply_config
from .experiment import format_ablation, order_label, run_ablation
from .image import ImageFormatError, load_image, save_pgm
from .keypad import KeypadSession
from .pipeline import PipelineConfig, PipelineError, run_pipeline
from .synth import EncodeError, RenderParams, add_noise, make_page, render_page
from .synth import encode_text as encode_cells


class SessionCreate(BaseModel):
    language: str = "en"
    grade: int = 1


class SessionInfo(BaseModel):
    session_id: str
    language: str
    grade: int
    text: str


class KeyPress(BaseModel):
    key: int


class KeyResult(BaseModel):
    event: str  # letter | word_boundary | sentence_end | error
    emitted: str
    text: str


class NoiseSpec(BaseModel):
    seed: int = 0
    gaussian_sigma: float = 8.0
    speck_fraction: float = 0.0005
    speck_radius: float = 6.5


class ConvertRequest(BaseModel):
    image_b64: str
    config: dict[str, str] = Field(default_factory=dict)
    dump_layout: bool = False
    dump_bits: bool = False


class ConvertResponse(BaseModel):
    text: str
    line_count: int
    cell_count: int
    unmapped_cells: int
    edge_threshold: float
    seconds: float
    layout: Optional[list[list[list[int]]]] = None  # per line: [x, y, w, h]
    bits: Optional[str] = None


class SynthRequest(BaseModel):
    text: str
    language: str = "en"
    grade: int = 2
    max_cells_per_line: int = 56
    noise: Optional[NoiseSpec] = None


class SynthResponse(BaseModel):
    image_b64: str
    line_count: int
    cell_count: int
    bits: str


class AblateRequest(BaseModel):
    language: str = "en"
    grade: int = 2
    pages: int = 3
    words_per_page: int = 60
    seed: int = 0
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
    config: dict[str, str] = Field(default_factory=dict)


class AblateRow(BaseModel):
    order: list[str]
    label: str
    accuracies: list[float]
    mean: float
    errors: list[str]


class AblateResponse(BaseModel):
    rows: list[AblateRow]
    table: str


def _pipeline_config(overrides: dict[str, str]) -> PipelineConfig:
    try:
        return apply_config(PipelineConfig(), overrides)
    except (ConfigError, PipelineError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _bits(patterns) -> str:
    from .extract import patterns_to_bitstrings

    return patterns_to_bitstrings(patterns)


def create_app() -> FastAPI:
    app = FastAPI(title="braille2text", version=__version__)
    sessions: dict[str, KeypadSession] = {}
    locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> tuple[KeypadSession, threading.Lock]:
        with registry_lock:
            session = sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail="unknown session")
            return session, locks[session_id]

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/session", response_model=SessionInfo)
    def create_session(req: SessionCreate = SessionCreate()) -> SessionInfo:
        try:
            session = KeypadSession(req.language, req.grade)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        session_id = uuid.uuid4().hex
        with registry_lock:
            sessions[session_id] = session
            locks[session_id] = threading.Lock()
        return SessionInfo(
            session_id=session_id,
            language=session.language,
            grade=session.grade,
            text=session.text,
        )

    @app.get("/session/{session_id}", response_model=SessionInfo)
    def session_text(session_id: str) -> SessionInfo:
        session, lock = get_session(session_id)
        with lock:
            return SessionInfo(
                session_id=session_id,
                language=session.language,
                grade=session.grade,
                text=session.text,
            )

    @app.post("/session/{session_id}/key", response_model=KeyResult)
    def press_key(session_id: str, press: KeyPress) -> KeyResult:
        session, lock = get_session(session_id)
        with lock:
            event = session.feed(press.key)
        return KeyResult(event=event.event, emitted=event.emitted, text=event.text)

    @app.post("/convert", response_model=ConvertResponse)
    def convert(req: ConvertRequest) -> ConvertResponse:
        try:
            image = load_image(base64.b64decode(req.image_b64))
        except (ImageFormatError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=f"bad image: {exc}")
        cfg = _pipeline_config(req.config)
        t0 = time.perf_counter()
        try:
            report = run_pipeline(image, cfg)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        seconds = time.perf_counter() - t0
        layout = None
        if req.dump_layout:
            layout = [
                [[b.x, b.y, b.w, b.h] for b in row] for row in report.layout.lines
            ]
        return ConvertResponse(
            text=report.text,
            line_count=report.line_count,
            cell_count=report.cell_count,
            unmapped_cells=report.unmapped_cells,
            edge_threshold=report.edge_threshold,
            seconds=seconds,
            layout=layout,
            bits=_bits(report.patterns) if req.dump_bits else None,
        )

    @app.post("/synth", response_model=SynthResponse)
    def synth(req: SynthRequest) -> SynthResponse:
        params = RenderParams(max_cells_per_line=req.max_cells_per_line)
        try:
            cells = encode_cells(req.text, req.language, req.grade)
            result = render_page(cells, params)
        except (EncodeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        image = result.image
        if req.noise is not None:
            n = req.noise
            image = add_noise(
                image,
                seed=n.seed,
                gaussian_sigma=n.gaussian_sigma,
                speck_fraction=n.speck_fraction,
                speck_radius=n.speck_radius,
            )
        return SynthResponse(
            image_b64=base64.b64encode(save_pgm(image)).decode("ascii"),
            line_count=result.truth.line_count,
            cell_count=result.truth.cell_count,
            bits=_bits(result.truth.pattern_rows()),
        )

    @app.post("/ablate", response_model=AblateResponse)
    def ablate(req: AblateRequest) -> AblateResponse:
        cfg = _pipeline_config(
            {"language": req.language, "grade": str(req.grade), **req.config}
        )
        pages = []
        for k in range(req.pages):
            try:
                text, res = make_page(
                    req.language, req.words_per_page, seed=req.seed + k, grade=req.grade
                )
            except EncodeError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            n = req.noise
            noisy = add_noise(
                res.image,
                seed=n.seed + k,
                gaussian_sigma=n.gaussian_sigma,
                speck_fraction=n.speck_fraction,
                speck_radius=n.speck_radius,
            )
            pages.append((noisy, text))
        rows = run_ablation(pages, cfg)
        return AblateResponse(
            rows=[
                AblateRow(
                    order=list(r.order),
                    label=order_label(r.order),
                    accuracies=r.accuracies,
                    mean=r.mean,
                    errors=r.errors,
                )
                for r in rows
            ],
            table=format_ablation(rows),
        )

    _mount_ui(app)
    return app


def _mount_ui(app: FastAPI) -> None:
    """Serve the browser keypad if its build output is around."""
    import os
    from pathlib import Path

    candidates = []
    env_dir = os.environ.get("BRAILLE2TEXT_UI_DIR")
    if env_dir:
        candidates.append(Path(env_dir))
    candidates.append(Path(__file__).resolve().parents[2] / "frontend" / "dist")
    for candidate in candidates:
        if candidate.is_dir():
            app.mount("/", StaticFiles(directory=candidate, html=True), name="ui")
            return
