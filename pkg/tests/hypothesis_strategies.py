from hypothesis import strategies as st

from cerny_lab.automaton import Automaton


@st.composite
def automata(draw, min_n=1, max_n=5, min_m=1, max_m=3):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    m = draw(st.integers(min_value=min_m, max_value=max_m))
    letters = draw(
        st.lists(
            st.lists(st.integers(min_value=1, max_value=n), min_size=n, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    return Automaton(n, tuple(tuple(letter) for letter in letters))
