"""Shared fixtures and oracles for the test suite."""

from __future__ import annotations

import json
import shutil
import subprocess
from pathlib import Path

from mpst import corpus_text
from mpst.ast import ScribbleModule
from mpst.codegen import compile_fail_corpus
from mpst.efsm import Efsm, Transition
from mpst.parser import parse_module

SRC_DIR = Path(__file__).parent.parent / "src"

PYRIGHT = shutil.which("pyright")


def run_compile_gate(tmp_path: Path) -> dict[str, list[dict]]:
    """Write the compile-fail corpus, run pyright once over it, and
    bucket its diagnostics by case name. Requires pyright on PATH."""
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir(exist_ok=True)
    for case in compile_fail_corpus():
        (corpus_dir / f"{case.name}.py").write_text(case.source, encoding="utf-8")
    (tmp_path / "pyrightconfig.json").write_text(
        json.dumps(
            {
                "typeCheckingMode": "basic",
                "extraPaths": [str(SRC_DIR)],
                "include": ["corpus"],
                "reportMissingTypeStubs": False,
            }
        ),
        encoding="utf-8",
    )
    proc = subprocess.run(
        [PYRIGHT, "--outputjson", "--project", str(tmp_path)],
        capture_output=True,
        text=True,
        timeout=600,
    )
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError:  # pragma: no cover - tooling failure
        raise AssertionError(f"pyright produced no JSON: {proc.stdout}\n{proc.stderr}")
    by_file: dict[str, list[dict]] = {}
    for diag in doc["generalDiagnostics"]:
        name = Path(diag["file"]).stem
        by_file.setdefault(name, []).append(diag)
    return by_file


def assert_compile_gate(diagnostics: dict[str, list[dict]]) -> None:
    """Every negative fails for its intended reason; positives are clean."""
    for case in compile_fail_corpus():
        if case.expected_rule is None:
            assert diagnostics.get(case.name, []) == [], (
                f"{case.name} should type-check cleanly: "
                f"{[d['message'] for d in diagnostics.get(case.name, [])]}"
            )
            continue
        diags = [d for d in diagnostics.get(case.name, []) if d["severity"] == "error"]
        assert diags, f"{case.name}: expected a type error, got none"
        matching = [
            d
            for d in diags
            if d.get("rule") == case.expected_rule
            and case.expected_pattern in d["message"]
        ]
        assert matching, (
            f"{case.name}: no {case.expected_rule} diagnostic matching "
            f"{case.expected_pattern!r} in {[d['message'] for d in diags]}"
        )

TESTS_DIR = Path(__file__).parent
NEGATIVE_DIR = TESTS_DIR / "corpus" / "negative"
GOLDEN_DIR = TESTS_DIR / "golden"

# (file, protocol): every shipped well-formed protocol.
CORPUS: list[tuple[str, str]] = [
    ("battleship.scr", "BattleShips"),
    ("battleship.scr", "Game"),
    ("two_buyer.scr", "TwoBuyer"),
    ("ping_pong.scr", "PingPong"),
    ("rec_adder.scr", "Adder"),
    ("connect_demo.scr", "Fetch"),
]

CORPUS_FILES = sorted({name for name, _ in CORPUS})


def load_corpus_module(name: str) -> ScribbleModule:
    return parse_module(corpus_text(name))


def corpus_roles() -> list[tuple[str, str, str]]:
    """Every (file, protocol, role) triple in the corpus."""
    out = []
    for name, proto in CORPUS:
        module = load_corpus_module(name)
        for role in module.protocol(proto).role_params:
            out.append((name, proto, role))
    return out


# -- fused view of a split machine + bounded bisimulation ------------------------

Action = tuple[str, str, str, tuple[str, ...]]


def direct_actions(efsm: Efsm) -> dict[int, dict[Action, int]]:
    table: dict[int, dict[Action, int]] = {s: {} for s in efsm.states()}
    for t in efsm.transitions:
        table[t.source][(t.action, t.peer, t.label, t.payloads)] = t.target
    return table


def fused_actions(split: Efsm) -> dict[int, dict[Action, int]]:
    """Transition function of a split machine with the label edge and
    its payload edge collapsed into one action, skipping intermediates."""
    outgoing: dict[int, list[Transition]] = {s: [] for s in split.states()}
    for t in split.transitions:
        outgoing[t.source].append(t)
    intermediates = {
        t.target for s, trs in outgoing.items() if len(trs) >= 2 for t in trs
    }
    table: dict[int, dict[Action, int]] = {}
    for state in split.states():
        if state in intermediates:
            continue
        entry: dict[Action, int] = {}
        trs = outgoing[state]
        if len(trs) >= 2:
            for t in trs:
                (follow,) = outgoing[t.target]
                entry[(follow.action, follow.peer, follow.label, follow.payloads)] = (
                    follow.target
                )
        else:
            for t in trs:
                entry[(t.action, t.peer, t.label, t.payloads)] = t.target
        table[state] = entry
    return table


def bounded_bisimilar(a: Efsm, b_fused_table: dict[int, dict[Action, int]],
                      b_initial: int, depth: int) -> bool:
    """Depth-bounded bisimulation between a machine and a fused table."""
    a_table = direct_actions(a)
    pairs = [(x, y) for x in a_table for y in b_fused_table]
    related = {pair: True for pair in pairs}
    for _ in range(depth):
        nxt = {}
        for x, y in pairs:
            ax, ay = a_table[x], b_fused_table[y]
            ok = set(ax) == set(ay) and all(
                related[(ax[act], ay[act])] for act in ax
            )
            nxt[(x, y)] = ok
        related = nxt
    return related[(a.initial, b_initial)]
