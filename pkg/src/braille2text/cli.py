"""Command line front end.

Every subcommand except keypad-serve is a thin HTTP client: by default
the service app is mounted in-process, and --server points the same
calls at a running instance instead.  keypad-serve hosts that instance.
"""

from __future__ import annotations

import argparse
import asyncio
import base64
import json
import shlex
import subprocess
import sys
import tempfile
from pathlib import Path

import httpx


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="braille2text",
        description="Convert scanned braille pages to text; host the keypad service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convert", help="decode a scanned page image")
    conv.add_argument("image", help="PGM or PNG scan")
    conv.add_argument("--lang", choices=("en", "hi", "ta"), default=None)
    conv.add_argument("--grade", type=int, choices=(1, 2), default=None)
    conv.add_argument("--config", help="key=value config file")
    conv.add_argument("--dump-layout", action="store_true",
                      help="print detected cell boxes as JSON")
    conv.add_argument("--dump-bits", action="store_true",
                      help="print extracted dot patterns")
    conv.add_argument("-o", "--out", help="write decoded text here instead of stdout")
    conv.add_argument("--speak-cmd", metavar="TEMPLATE",
                      help="run this command on the result; {file} and {text} expand")
    conv.add_argument("--server", help="use a running service instead of in-process")

    syn = sub.add_parser("synth", help="render text as a synthetic page scan")
    syn.add_argument("text")
    syn.add_argument("--lang", choices=("en", "hi", "ta"), default="en")
    syn.add_argument("--grade", type=int, choices=(1, 2), default=2)
    syn.add_argument("--max-cells", type=int, default=56)
    syn.add_argument("--noise-seed", type=int, default=None,
                     help="add scanner noise with this seed")
    syn.add_argument("--gaussian-sigma", type=float, default=8.0)
    syn.add_argument("--speck-fraction", type=float, default=0.0005)
    syn.add_argument("--speck-radius", type=float, default=6.5)
    syn.add_argument("--dump-bits", action="store_true")
    syn.add_argument("-o", "--out", default="page.pgm")
    syn.add_argument("--server")

    abl = sub.add_parser("ablate", help="compare enhancement orders on noisy pages")
    abl.add_argument("--lang", choices=("en", "hi", "ta"), default="en")
    abl.add_argument("--grade", type=int, choices=(1, 2), default=2)
    abl.add_argument("--pages", type=int, default=3)
    abl.add_argument("--words", type=int, default=60)
    abl.add_argument("--seed", type=int, default=0)
    abl.add_argument("--noise-seed", type=int, default=0)
    abl.add_argument("--gaussian-sigma", type=float, default=8.0)
    abl.add_argument("--speck-fraction", type=float, default=0.0005)
    abl.add_argument("--speck-radius", type=float, default=6.5)
    abl.add_argument("--json", action="store_true", help="emit rows as JSON")
    abl.add_argument("--server")

    serve = sub.add_parser("keypad-serve", help="host the keypad/convert service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser.parse_args(argv)


async def _request(server, method, path, payload):
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
            response = await client.request(method, path, json=payload)
    else:
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://braille2text", timeout=600.0
        ) as client:
            response = await client.request(method, path, json=payload)
    return response


def _call(server, method, path, payload):
    response = asyncio.run(_request(server, method, path, payload))
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        raise SystemExit(1)
    return response.json()


def _speak(template: str, text: str) -> None:
    with tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", suffix=".txt", delete=False
    ) as handle:
        handle.write(text)
        path = handle.name
    cmd = template.replace("{file}", shlex.quote(path)).replace(
        "{text}", shlex.quote(text)
    )
    subprocess.run(cmd, shell=True, check=False)


def _cmd_convert(args) -> int:
    data = Path(args.image).read_bytes()
    config: dict[str, str] = {}
    if args.config:
        from .config import parse_config_text

        config.update(parse_config_text(Path(args.config).read_text("utf-8")))
    if args.lang is not None:
        config["language"] = args.lang
    if args.grade is not None:
        config["grade"] = str(args.grade)
    body = _call(
        args.server,
        "POST",
        "/convert",
        {
            "image_b64": base64.b64encode(data).decode("ascii"),
            "config": config,
            "dump_layout": args.dump_layout,
            "dump_bits": args.dump_bits,
        },
    )
    if args.out:
        Path(args.out).write_text(body["text"] + "\n", encoding="utf-8")
    else:
        print(body["text"])
    if args.dump_layout:
        print(json.dumps({"lines": body["layout"]}))
    if args.dump_bits:
        print(body["bits"])
    if body["unmapped_cells"]:
        print(f"warning: {body['unmapped_cells']} unmapped cells", file=sys.stderr)
    if args.speak_cmd:
        _speak(args.speak_cmd, body["text"])
    return 0


def _cmd_synth(args) -> int:
    payload = {
        "text": args.text,
        "language": args.lang,
        "grade": args.grade,
        "max_cells_per_line": args.max_cells,
    }
    if args.noise_seed is not None:
        payload["noise"] = {
            "seed": args.noise_seed,
            "gaussian_sigma": args.gaussian_sigma,
            "speck_fraction": args.speck_fraction,
            "speck_radius": args.speck_radius,
        }
    body = _call(args.server, "POST", "/synth", payload)
    Path(args.out).write_bytes(base64.b64decode(body["image_b64"]))
    print(f"{args.out}: {body['line_count']} lines, {body['cell_count']} cells")
    if args.dump_bits:
        print(body["bits"])
    return 0


def _cmd_ablate(args) -> int:
    body = _call(
        args.server,
        "POST",
        "/ablate",
        {
            "language": args.lang,
            "grade": args.grade,
            "pages": args.pages,
            "words_per_page": args.words,
            "seed": args.seed,
            "noise": {
                "seed": args.noise_seed,
                "gaussian_sigma": args.gaussian_sigma,
                "speck_fraction": args.speck_fraction,
                "speck_radius": args.speck_radius,
            },
        },
    )
    if args.json:
        print(json.dumps(body["rows"], indent=2))
    else:
        print(body["table"])
        for row in body["rows"]:
            for err in row["errors"]:
                print(f"note: {err}", file=sys.stderr)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def main(argv=None) -> int:
    args = _parse_args(argv)
    handler = {
        "convert": _cmd_convert,
        "synth": _cmd_synth,
        "ablate": _cmd_ablate,
        "keypad-serve": _cmd_serve,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
