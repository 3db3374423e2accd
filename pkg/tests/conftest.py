from __future__ import annotations

import numpy as np
import pytest

from transweingarten.expr import random_ast
from transweingarten.surface import ExprProfile, TranslationSurface

# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def random_surfaces(seed: int, count: int, ambient="euclidean", depth: int = 4) -> list[TranslationSurface]:
    rng = np.random.default_rng(seed)
    return [
        TranslationSurface(ExprProfile(random_ast(rng, depth)), ExprProfile(random_ast(rng, depth)), ambient)
        for _ in range(count)
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
