from __future__ import annotations

from itertools import combinations

from hypothesis import settings, strategies as st

from oracles import downward_closure, vertex_set_complex

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def small_complexes(draw, max_vertices: int = 4, truncation: int | None = None):
    """A marked subcomplex of ``Delta[n]`` given by random maximal faces and marks."""
    n = draw(st.integers(0, max_vertices - 1))
    every = [S for r in range(1, n + 2) for S in combinations(range(n + 1), r)]
    tops = draw(st.lists(st.sampled_from(every), min_size=1, max_size=4))
    members = downward_closure(tops) | {(v,) for v in range(n + 1)}
    positive = sorted(S for S in members if len(S) > 1)
    marked = set(draw(st.lists(st.sampled_from(positive), max_size=3))) if positive else set()
    T = n if truncation is None else truncation
    return vertex_set_complex(n, members, T, marked)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
