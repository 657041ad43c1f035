import pytest

from dioidpart.groups import cyclic, dihedral, direct_product, from_table, symmetric

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def quaternion_table():
    # units 1, i, j, k as 0..3; element index = 4*sign_bit + unit
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            sign, unit = unit_mul[(a % 4, b % 4)]
            sign ^= (a // 4) ^ (b // 4)
            row.append(4 * sign + unit)
        table.append(row)
    return table


def groups_up_to_8():
    """Every group of order at most 8 up to isomorphism, plus the small
    ones rebuilt from their raw Cayley tables."""
    gs = [cyclic(n) for n in range(1, 9)]
    gs += [
        direct_product(cyclic(2), cyclic(2)),
        symmetric(3),
        direct_product(cyclic(2), cyclic(4)),
        direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        dihedral(4),
        from_table(quaternion_table(), label="Q8"),
    ]
    gs += [from_table([list(r) for r in G.mul]) for G in gs if G.order <= 6]
    return gs


@pytest.fixture(scope="session")
def small_groups():
    return groups_up_to_8()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
