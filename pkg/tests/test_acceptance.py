"""Acceptance criteria, one test each; the summary prints one PASS/FAIL line per criterion."""
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import gcd

import pytest

from splicesig import (
    average_routes,
    average_signature,
    check_main_theorem,
    completion,
    cut_edge,
    family2_average_oracle,
    iterated_torus,
    load_diagram,
    s_gamma,
    signature_function,
    splice,
    star,
    torus,
)
from splicesig.dedekind import identity_suite
from splicesig.graph import linking_number, nearest, vertex_multiplicity

from conftest import DATA, random_diagrams


def km(p, q):
    return (Fraction(p) - Fraction(1, p)) * (Fraction(q) - Fraction(1, q))


@pytest.mark.criterion(1, "two-node fixture: S = 1015/19 term by term, average -1015/57, theorem holds")
def test_criterion_1_two_node():
    d = load_diagram(DATA / "two_node.json")
    start = time.perf_counter()
    b = s_gamma(d)
    r = check_main_theorem(d)
    elapsed = time.perf_counter() - start
    assert (b.linking, b.nodes, b.edges, b.arrowheads) == (24, 38, Fraction(1, 171), Fraction(14, 171))
    assert b.total == Fraction(1015, 19)
    assert r.average == Fraction(-1015, 57) and r.holds
    assert elapsed < 0.1, elapsed


@pytest.mark.criterion(2, "torus knots 2 <= p < q <= 25: average = -(p-1/p)(q-1/q)/3, theorem holds")
def test_criterion_2_torus_knots():
    start = time.perf_counter()
    count = 0
    for p in range(2, 26):
        for q in range(p + 1, 26):
            if gcd(p, q) != 1:
                continue
            d = torus(p, q)
            assert average_signature(d) == -km(p, q) / 3, (p, q)
            assert check_main_theorem(d).holds, (p, q)
            count += 1
    elapsed = time.perf_counter() - start
    assert count == 175  # sum over q = 3..25 of (phi(q) - 1)
    assert elapsed < 10, elapsed


@pytest.mark.criterion(3, "iterated torus knots: S = sum (p_j-1/p_j)(q_j-1/q_j), theorem holds (100 lists)")
def test_criterion_3_iterated_torus():
    rng = random.Random(2024)
    start = time.perf_counter()
    for _ in range(100):
        params = []
        for _ in range(rng.randint(1, 3)):
            while True:
                p, q = rng.randint(2, 12), rng.randint(2, 12)
                if gcd(p, q) == 1:
                    break
            params.append((p, q))
        d = iterated_torus(params)
        assert s_gamma(d).total == sum(km(p, q) for p, q in params), params
        assert check_main_theorem(d).holds, params
    elapsed = time.perf_counter() - start
    assert elapsed < 30, elapsed


@pytest.mark.criterion(4, "trefoil step function: breakpoints {1/6, 5/6}, values (0, -2, 0), integral -4/3")
def test_criterion_4_trefoil():
    d = load_diagram(DATA / "trefoil.json")
    start = time.perf_counter()
    sf = signature_function(d)
    elapsed = time.perf_counter() - start
    assert sf.breakpoints == (Fraction(1, 6), Fraction(5, 6))
    assert sf.values == (0, -2, 0)
    assert sf.integral() == Fraction(-4, 3)
    assert elapsed < 0.1, elapsed


@pytest.mark.criterion(5, "Dedekind suite: fast = naive q <= 2000, reciprocity q <= 500, three-term x1000, aggregates")
def test_criterion_5_dedekind_suite():
    start = time.perf_counter()
    results = identity_suite(max_q=2000, samples=20, recip_max=500, three_term=1000)
    elapsed = time.perf_counter() - start
    failed = [(name, detail) for name, ok, detail in results if not ok]
    assert not failed, failed
    assert {name for name, _, _ in results} >= {"fast == naive", "reciprocity", "three-term law", "example aggregates"}
    assert elapsed < 60, elapsed


@pytest.mark.criterion(6, "property suites on 1000 generated diagrams and the star family")
def test_criterion_6_property_suites():
    start = time.perf_counter()
    tallies = dict.fromkeys(("cuts", "completed cuts", "trivial splices", "non-skipped"), 0)
    for d in random_diagrams(1000, seed=6, nodes=5):
        route_a, route_b = average_routes(d)
        assert route_a == route_b
        avg = route_a
        s = s_gamma(d)
        for e in d.node_edges():
            r = cut_edge(d, e)
            assert splice(r.side_a, r.arrow_a, r.side_b, r.arrow_b) == d
            for side in (r.side_a, r.side_b):
                for n in side.nodes:
                    assert vertex_multiplicity(side, n) == vertex_multiplicity(d, n)
            assert avg == average_signature(r.side_a) + average_signature(r.side_b) + r.eta
            tallies["cuts"] += 1
            a, b = r.mult_a, r.mult_b
            if a * b:
                t1 = completion(r.side_a, r.arrow_a, always_splice=True)
                t2 = completion(r.side_b, r.arrow_b, always_splice=True)
                assert s.linking - s_gamma(t1).linking - s_gamma(t2).linking == -2 * a * b
                tallies["completed cuts"] += 1
        for x in d.arrowheads:
            b = sum(linking_number(d, y, x) for y in d.arrowheads if y != x)
            if b >= 1 or nearest(d, x)[1] == 1:
                assert s_gamma(completion(d, x, always_splice=True)).total == s.total
                tallies["trivial splices"] += 1
        rep = check_main_theorem(d)
        if not rep.skipped:
            assert rep.holds, d
            tallies["non-skipped"] += 1
    rng = random.Random(6)
    pairs = [(p, q) for p in range(1, 10) for q in range(p + 1, 12) if gcd(p, q) == 1]
    for _ in range(200):
        p, q = rng.choice(pairs)
        mults = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
        assert average_signature(star(p, q, mults)) == family2_average_oracle(p, q, mults), (p, q, mults)
    elapsed = time.perf_counter() - start
    assert tallies["non-skipped"] == 1000
    assert min(tallies.values()) > 200, tallies
    assert elapsed < 300, elapsed


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "splicesig", *map(str, args)], capture_output=True, text=True)


@pytest.mark.criterion(7, "CLI: byte-identical JSON across runs; documented exit codes")
def test_criterion_7_cli(tmp_path):
    first = _cli("invariants", "--json", DATA / "two_node.json")
    again = _cli("invariants", "--json", DATA / "two_node.json")
    assert first.returncode == 0 and first.stdout == again.stdout
    assert '"total": "1015/19"' in first.stdout and '"integral": "-1015/57"' in first.stdout

    a = _cli("check", "--random", 30, "--seed", 7, "--jobs", 1)
    b = _cli("check", "--random", 30, "--seed", 7, "--jobs", 2)
    assert a.returncode == b.returncode == 0 and a.stdout == b.stdout

    expect = [
        (("validate", DATA / "two_node.json"), 0),
        (("validate", DATA / "weight0.json"), 1),
        (("validate", tmp_path / "missing.json"), 2),
        (("validate", DATA / "malformed.json"), 2),
        (("invariants", DATA / "weight0.json"), 1),
        (("check", DATA / "two_node.json"), 0),
        (("check", DATA / "unknot_figure.json"), 0),
        (("selftest", "--identities", "--max-q", 0), 2),
        (("frobnicate",), 2),
    ]
    for args, code in expect:
        assert _cli(*args).returncode == code, args
    assert "skipped: not almost minimal" in _cli("check", DATA / "unknot_figure.json").stdout
