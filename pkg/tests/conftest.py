import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arccontact import Arc, ArcFamily, Variety, variables  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"


def xy_z5():
    x, y, z = variables(3)
    return Variety("xyz", [x * y - z**5])


def bounded4():
    x, y, z, s = variables(4)
    return Variety("xyzs", [x**2 * y**3 - z**3 * s**4])


def unbounded4():
    x, y, z, s = variables(4)
    return Variety("xyzs", [x**2 * y**3 - z**4 * s**5])


def cusp():
    x, y = variables(2)
    return Variety("xy", [x**2 - y**3])


def a_n(n):
    x, y, z = variables(3)
    return Variety("xyz", [x * y - z ** (n + 1)])


def growth_family():
    # x -> t^(2N+2), y -> t^(2N+5), z -> t, s -> t^(2N+3)
    return ArcFamily(((1, 2, 2), (1, 2, 5), (1, 0, 1), (1, 2, 3)), 1, 10)


def suite():
    """(name, variety, arc) pairs used by the cross-oracle checks."""
    pairs = [
        ("xy-z5 (3,2,1)", xy_z5(), Arc.monomial([3, 2, 1])),
        ("xy-z5 (5,5,2)", xy_z5(), Arc.monomial([5, 5, 2])),
        ("xy-z5 (2,3,1)", xy_z5(), Arc.monomial([2, 3, 1])),
        ("xy-z5 (1,4,1)", xy_z5(), Arc.monomial([1, 4, 1])),
        ("xy-z5 (7,3,2)", xy_z5(), Arc.monomial([7, 3, 2])),
        ("xy-z5 (6,9,3)", xy_z5(), Arc.monomial([6, 9, 3])),
        ("xy-z5 (4,11,3)", xy_z5(), Arc.monomial([4, 11, 3])),
        ("bounded (2,3,3,1)", bounded4(), Arc.monomial([2, 3, 3, 1])),
        ("bounded (4,1,1,2)", bounded4(), Arc.monomial([4, 1, 1, 2])),
        ("bounded (5,1,3,1)", bounded4(), Arc.monomial([5, 1, 3, 1])),
        ("bounded (6,4,4,3)", bounded4(), Arc.monomial([6, 4, 4, 3])),
        ("bounded (2,6,2,4)", bounded4(), Arc.monomial([2, 6, 2, 4])),
        ("unbounded (3,6,1,4)", unbounded4(), Arc.monomial([3, 6, 1, 4])),
        ("unbounded (5,5,5,1)", unbounded4(), Arc.monomial([5, 5, 5, 1])),
        ("unbounded (3,4,2,2)", unbounded4(), Arc.monomial([3, 4, 2, 2])),
        ("cusp (3,2)", cusp(), Arc.monomial([3, 2])),
        ("cusp (9,6)", cusp(), Arc.monomial([9, 6])),
        ("A2 (3,3,2)", a_n(2), Arc.monomial([3, 3, 2])),
        ("A3 (2,6,2)", a_n(3), Arc.monomial([2, 6, 2])),
        ("A4 (1,4,1)", a_n(4), Arc.monomial([1, 4, 1])),
    ]
    for n in (1, 2, 3, 4):
        from arccontact import instantiate_family

        pairs.append((f"unbounded family N={n}", unbounded4(), instantiate_family(growth_family(), n)))
    # non-monomial arc on xy - z^5: x = t^3 + t^4, y = t^2 (1 + t)^(-1)
    from fractions import Fraction

    from arccontact import FormalSeries

    x_img = FormalSeries({3: 1, 4: 1})
    y_img = FormalSeries({2: 1}).div_unit(FormalSeries({0: 1, 1: 1}), 40)
    pairs.append(("xy-z5 binomial image", xy_z5(), Arc([x_img, y_img, FormalSeries({1: 1})])))
    pairs.append(
        ("A2 scaled", a_n(2), Arc.monomial([3, 3, 2], [Fraction(1, 2), 2, 1]))
    )
    return pairs


@pytest.fixture(scope="session")
def contact_suite():
    return suite()


ACCEPTANCE_LINES = []


def record_acceptance(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
