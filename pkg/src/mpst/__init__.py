"""Multiparty session types toolchain.

Parse Scribble global protocols, check well-formedness, project roles
to endpoint finite state machines, generate per-role typestate APIs,
and execute sessions linearly over WebSocket or in-memory transports.
"""

from importlib import resources

__version__ = "0.1.0"


def corpus_path(name: str):
    """Path to one of the shipped ``.scr`` protocol sources."""
    return resources.files(__package__).joinpath("protocols", name)


def corpus_text(name: str) -> str:
    return corpus_path(name).read_text(encoding="utf-8")
