"""The ``mpst-battleship`` demo command.

``serve`` runs the game server, ``bot`` a scripted player, and
``terminal`` the interactive player (role P1).
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import os
import sys

from .bot import bot_main
from .server import server_main
from .terminal import terminal_main

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def main(argv: list[str] | None = None) -> int:
    level = _LOG_LEVELS.get(os.environ.get("MPST_LOG", "info").lower(), logging.INFO)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )
    parser = argparse.ArgumentParser(prog="mpst-battleship")
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the game server")
    p_serve.add_argument("--bind", default="ws://127.0.0.1:8765/battleship")
    p_serve.add_argument("--matches", type=int, default=None)

    p_bot = sub.add_parser("bot", help="run a scripted player")
    p_bot.add_argument("--url", default="ws://127.0.0.1:8765/battleship")
    p_bot.add_argument("--role", choices=("P1", "P2"), default="P1")
    p_bot.add_argument("--seed", type=int, default=0)

    p_term = sub.add_parser("terminal", help="play interactively as P1")
    p_term.add_argument("--url", default="ws://127.0.0.1:8765/battleship")

    args = parser.parse_args(argv)
    if args.command == "serve":
        asyncio.run(server_main(args.bind, args.matches))
        return 0
    if args.command == "bot":
        result = asyncio.run(bot_main(args.url, args.role, args.seed))
        print(result)
        return 0
    result = asyncio.run(terminal_main(args.url))
    print(result)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
