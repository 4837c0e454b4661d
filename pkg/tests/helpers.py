import random

from hypothesis import strategies as st

from qcdcl.formula import PCNF
from qcdcl.generators import random_pcnf


def F(prefix, clauses, n=0):
    return PCNF.from_lists(prefix, clauses, n)


@st.composite
def pcnfs(draw, max_vars=8, max_clauses=14, max_blocks=4):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return random_pcnf(rng, blocks=(1, max_blocks), nvars=(2, max_vars),
                       nclauses=(0, max_clauses), width=(1, 4))


@st.composite
def pcnf_and_trail(draw, max_vars=8, max_clauses=14):
    """A formula plus a random prefix-respecting partial assignment."""
    psi = draw(pcnfs(max_vars, max_clauses))
    order = [v for b in psi.prefix.blocks for v in b.vars]
    k = draw(st.integers(0, len(order)))
    signs = draw(st.lists(st.booleans(), min_size=k, max_size=k))
    return psi, [v if s else -v for v, s in zip(order[:k], signs)]
