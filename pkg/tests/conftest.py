import pytest
from hypothesis import strategies as st

from emsurf.subgroup import compose, invert

from emsurf.subgroup import build_congruence, builtin_spec

CORPUS_SPECS = [f"gamma1:{n}" for n in range(3, 13)] + [f"gamma:{n}" for n in range(3, 9)]


def group(text):
    family, n = text.split(":")
    return build_congruence(builtin_spec(family, int(n)))


@pytest.fixture(scope="session")
def corpus():
    return {text: group(text) for text in CORPUS_SPECS}


@pytest.fixture
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("EMSURF_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


# random permutation subgroups -----------------------------------------------

def lifted_rep(n_half, s_pairs, u_perm, s_signs, u_signs):
    """Lift a PSL2(Z) action (s fixed-point free, u of order 3) to SL2(Z) without -1.

    Points are (i, eps); -1 flips eps.  Returns sigma_s, sigma_t on the orbit of point 0.
    """
    n = n_half
    s = list(range(n))
    for a, b in s_pairs:
        s[a], s[b] = b, a
    sa = [0] * n
    for a, b in s_pairs:
        sa[a], sa[b] = s_signs[a] % 2, 1 - s_signs[a] % 2
    ub = [0] * n
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        cyc = [i]
        while u_perm[cyc[-1]] != i:
            cyc.append(u_perm[cyc[-1]])
        seen.update(cyc)
        if len(cyc) == 1:
            ub[i] = 1
        else:
            ub[cyc[0]], ub[cyc[1]] = u_signs[cyc[0]] % 2, u_signs[cyc[1]] % 2
            ub[cyc[2]] = (1 - ub[cyc[0]] - ub[cyc[1]]) % 2

    def idx(i, e):
        return 2 * i + e

    sig_s = [0] * (2 * n)
    sig_u = [0] * (2 * n)
    for i in range(n):
        for e in (0, 1):
            sig_s[idx(i, e)] = idx(s[i], e ^ sa[i])
            sig_u[idx(i, e)] = idx(u_perm[i], e ^ ub[i])
    # U = S T  =>  T = S^-1 U under the right action
    sig_t = compose(invert(sig_s), sig_u)
    return restrict_to_orbit(tuple(sig_s), tuple(sig_t))


def restrict_to_orbit(s, t):
    """Restrict an action to the orbit of point 0, relabelled in increasing order."""
    orbit, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in (s[i], t[i]):
            if j not in orbit:
                orbit.add(j)
                stack.append(j)
    pts = sorted(orbit)
    new = {p: k for k, p in enumerate(pts)}
    return tuple(new[s[p]] for p in pts), tuple(new[t[p]] for p in pts)


@st.composite
def psl_actions(draw):
    n = 2 * draw(st.integers(min_value=1, max_value=12))
    points = draw(st.permutations(range(n)))
    s_pairs = [(points[2 * k], points[2 * k + 1]) for k in range(n // 2)]
    order = draw(st.permutations(range(n)))
    n_fixed = draw(st.integers(min_value=0, max_value=n))
    while (n - n_fixed) % 3:
        n_fixed += 1
    u = list(range(n))
    rest = order[n_fixed:]
    for k in range(0, len(rest), 3):
        a, b, c = rest[k:k + 3]
        u[a], u[b], u[c] = b, c, a
    signs = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    usigns = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return n, s_pairs, u, signs, usigns




def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
