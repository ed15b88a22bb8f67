"""Command-line launcher: parse flags, load models, serve."""

from __future__ import annotations

import argparse
import sys

from .app import create_app
from .config import ServerConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="masksub-server",
        description="Serve fill-mask, classification, similarity and grammar endpoints.",
    )
    parser.add_argument("--port", type=int, default=8000, help="port to bind (default: 8000)")
    parser.add_argument("--host", default="127.0.0.1", help="host to bind (default: 127.0.0.1)")
    parser.add_argument("--mlm", required=True,
                        help="masked LM model path or hub name (required)")
    parser.add_argument("--classifier", action="append", default=[],
                        metavar="TASK=PATH",
                        help="classifier per task, e.g. classification=/models/sst2 (repeatable)")
    parser.add_argument("--encoder", required=True,
                        help="sentence encoder model path or hub name (required)")
    parser.add_argument("--max-seq-len", type=int, default=128,
                        help="tokenizer truncation length (default: 128)")
    parser.add_argument("--device", default="cpu", help="torch device (default: cpu)")
    return parser


def parse_config(argv=None) -> ServerConfig:
    args = build_parser().parse_args(argv)
    classifiers = {}
    for spec in args.classifier:
        task, sep, path = spec.partition("=")
        if not sep or not path:
            raise SystemExit(f"--classifier expects TASK=PATH, got {spec!r}")
        classifiers[task] = path
    return ServerConfig(
        port=args.port,
        host=args.host,
        mlm_model=args.mlm,
        classifier_models=classifiers,
        encoder_model=args.encoder,
        max_seq_len=args.max_seq_len,
        device=args.device,
    )


def main() -> None:
    import uvicorn

    config = parse_config()
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port)


if __name__ == "__main__":
    sys.exit(main())
