from fractions import Fraction

import pytest

from qmarginal.engine import (InequalitySystem, MarginalInequality,
                              generate_system)
from qmarginal.polytope import (check_membership, domain_constraints,
                                inequality_row, is_redundant, orbit_of,
                                reduce_system, subsystem_symmetries,
                                system_implies, systems_equivalent,
                                variable_layout)
from qmarginal.spectra import Spectrum, SystemFormat


def fmt(*dims):
    return SystemFormat(dims)


def spec(*vals):
    return Spectrum([Fraction(v) for v in vals])


class TestLayout:
    def test_variable_layout(self):
        nvars, blocks = variable_layout(fmt(2, 3))
        assert nvars == 6 + 2 + 3
        assert blocks == [(0, 6), (6, 2), (8, 3)]

    def test_inequality_row_signs(self):
        iq = MarginalInequality(fmt(2, 2), (1, 0, 0, -1), ((1, -1), (2, 0)))
        row = inequality_row(fmt(2, 2), iq)
        assert row[:4] == [1, 0, 0, -1]
        assert row[4:6] == [-1, 1]
        assert row[6:8] == [-2, 0]

    def test_domain_constraints_accept_uniform(self):
        from qmarginal.lp import OPTIMAL, lp_solve
        lp = domain_constraints(fmt(2, 2))
        res = lp_solve(lp)
        assert res.status == OPTIMAL


class TestRedundancy:
    def test_duplicate_is_redundant(self):
        iq = MarginalInequality(fmt(2, 2), (1, 0, 0, -1), ((1, -1), (0, 0)))
        verdict, witness = is_redundant(iq, [iq])
        assert verdict and witness is None

    def test_weaker_copy_is_redundant(self):
        strong = MarginalInequality(fmt(2, 2), (1, 0, 0, 0), ((1, 0), (0, 0)))
        weak = MarginalInequality(fmt(2, 2), (2, 0, 0, 0), ((1, 0), (0, 0)))
        verdict, _ = is_redundant(weak, [strong])
        assert verdict

    def test_witness_separates(self):
        # nu_1 >= lam_1 is not implied by the empty system
        iq = MarginalInequality(fmt(2, 2), (1, 0, 0, 0), ((1, 0), (0, 0)))
        verdict, witness = is_redundant(iq, [])
        assert not verdict
        row = inequality_row(fmt(2, 2), iq)
        value = sum(a * b for a, b in zip(row, witness))
        assert value < 0
        # the witness respects the chamber: decreasing blocks, unit traces
        nvars, blocks = variable_layout(fmt(2, 2))
        for off, size in blocks:
            vals = witness[off:off + size]
            assert all(a >= b for a, b in zip(vals, vals[1:]))
            assert sum(vals) == 1

    def test_system_implies_reflexive_and_monotone(self):
        system = generate_system(fmt(2, 2)).inequalities
        for iq in system:
            assert system_implies(system, iq, fmt(2, 2))

    def test_systems_equivalent_self(self):
        system = generate_system(fmt(2, 2)).inequalities
        assert systems_equivalent(system, list(system), fmt(2, 2))


class TestReduce:
    def test_reduce_drops_duplicated_weaker_rows(self):
        f = fmt(2, 2)
        base = generate_system(f)
        system = InequalitySystem(f)
        for iq in base.inequalities:
            system.add(iq)
        doubled = MarginalInequality(
            f, tuple(2 * v for v in base.inequalities[0].composite_coeffs),
            tuple(tuple(2 * v + 0 for v in b) + ()
                  for b in base.inequalities[0].component_coeffs))
        system.add(doubled)  # canonicalizes back; just exercises dedup
        reduced, report = reduce_system(system)
        assert len(reduced.inequalities) == 7
        assert set(report.kept) == set(reduced.inequalities)
        # every removed inequality is implied by the kept ones
        for iq in report.removed:
            assert system_implies(report.kept, iq, f)

    def test_reduced_system_is_irredundant(self):
        reduced, report = reduce_system(generate_system(fmt(2, 2)))
        kept = reduced.inequalities
        for i, iq in enumerate(kept):
            rest = kept[:i] + kept[i + 1:]
            verdict, witness = is_redundant(iq, rest)
            assert not verdict
        # stored witnesses actually separate
        for iq, witness in report.witnesses.items():
            row = inequality_row(fmt(2, 2), iq)
            assert sum(a * b for a, b in zip(row, witness)) < 0

    def test_orbit_closure(self):
        f = fmt(2, 2)
        syms = subsystem_symmetries(f)
        assert len(syms) == 2
        iq = MarginalInequality(f, (1, 0, 0, -1), ((1, -1), (0, 0)))
        orbit = orbit_of(iq, syms, use_duality=False)
        assert len(orbit) == 2
        reduced, report = reduce_system(generate_system(f))
        covered = set()
        for orb in report.orbits:
            covered.update(orb)
        assert covered == set(reduced.inequalities)


class TestMembership:
    def setup_method(self):
        self.system, _ = reduce_system(generate_system(fmt(2, 2)))

    def test_maximally_mixed_compatible(self):
        v = check_membership(
            self.system,
            [spec("1/2", "1/2"), spec("1/2", "1/2")],
            spec("1/4", "1/4", "1/4", "1/4"))
        assert v.compatible and v.violated == []

    def test_product_state_compatible(self):
        v = check_membership(
            self.system,
            [spec("3/4", "1/4"), spec("1/2", "1/2")],
            spec("3/8", "3/8", "1/8", "1/8"))
        assert v.compatible

    def test_pure_state_mismatched_margins_incompatible(self):
        v = check_membership(
            self.system,
            [spec(1, 0), spec("1/2", "1/2")],
            spec(1, 0, 0, 0))
        assert not v.compatible
        assert v.violated

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            check_membership(self.system, [spec(1, 0)], spec(1, 0, 0, 0))
        with pytest.raises(ValueError):
            check_membership(
                self.system, [spec(1, 0), spec(1, 0)], spec(1, 0, 0))
        with pytest.raises(ValueError):
            check_membership(
                self.system,
                [Spectrum([2, 0]), spec(1, 0)], spec(1, 0, 0, 0))
