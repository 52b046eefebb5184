import os
from pathlib import Path

import pytest
from hypothesis import strategies as st

from steinertd.corpus import load_directory
from steinertd.instance import Instance
from steinertd.partition import Partition

DATA = Path(__file__).parent / "data"


def steinlib_dir() -> Path:
    return Path(os.environ.get("STEINLIB_DIR", DATA / "steinlib"))


def steinlib_instances() -> list:
    return load_directory(steinlib_dir())


def bstyle_instances() -> list:
    return load_directory(DATA / "bstyle")


def corpus_instances() -> list:
    return bstyle_instances() + steinlib_instances()


@st.composite
def partitions(draw, ground=None, max_size=8):
    """Random partition of ``ground`` (or of a random prefix of 1..max_size)."""
    if ground is None:
        n = draw(st.integers(0, max_size))
        ground = list(range(1, n + 1))
    labels = [draw(st.integers(0, len(ground))) for _ in ground]
    blocks = {}
    for v, lab in zip(ground, labels):
        blocks.setdefault(lab, []).append(v)
    return Partition.from_blocks(blocks.values())


@pytest.fixture
def path_instance():
    # a=1, b=2, c=3: a-b weight 2, b-c weight 3, terminals {a, c}
    return Instance.build(3, [(1, 2, 2), (2, 3, 3)], [1, 3], name="path")


@pytest.fixture
def report_line(capsys):
    """Print one PASS/FAIL line straight to the terminal, bypassing capture."""

    def emit(label: str, ok: bool, detail: str = "", block: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f" - {detail}" if detail else ""))
            if block:
                print(block)

    return emit
