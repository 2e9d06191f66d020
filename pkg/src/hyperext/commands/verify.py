"""The ``verify`` verb: every property check exits 1 on a failure."""

from typing import Any, Callable

import numpy as np
import structlog

from hyperext.arrangement import Arrangement, essentialize, invariants, structural_violations
from hyperext.commands.base_command import BaseCommand, CommandResult
from hyperext.extension import (
    rank_monotonicity_violations,
    verify_classification,
    verify_monotonicity,
)
from hyperext.finitefield import ff_convolution_spot_check, good_prime, spot_check_size, verify_convolution
from hyperext.io import dumps
from hyperext.nbc import cij_via_nbc, is_independent, nbc_counts, nbc_sets
from hyperext.restriction import verify_restriction_monotonicity
from hyperext.state import Check, RunConfig, VerificationReport
from hyperext.utils import format_polynomial

log = structlog.get_logger()


class VerifyCommand(BaseCommand):
    def __init__(self, config: RunConfig):
        super().__init__("verify", config)
        self.extras: dict[str, Any] = {}

    def _essential(self, arrangement: Arrangement) -> Arrangement:
        if arrangement.is_essential:
            return arrangement
        essential, chart = essentialize(arrangement)
        self.extras["essentialized"] = {"pivots": list(chart.pivots), "dim": chart.essential_dim}
        return essential

    def _classification(self, arrangement: Arrangement) -> VerificationReport:
        return verify_classification(arrangement, self.config.trials, self.config.seed)

    def _monotonicity(self, arrangement: Arrangement) -> VerificationReport:
        arrangement = self._essential(arrangement)
        report = VerificationReport("monotonicity", seed=self.config.seed)
        report.absorb(verify_monotonicity(arrangement))
        report.absorb(rank_monotonicity_violations(arrangement))
        return report

    def _convolution(self, arrangement: Arrangement) -> VerificationReport:
        report = VerificationReport("convolution", seed=self.config.seed)
        check = verify_convolution(self._essential(arrangement))
        report.record(check.equal, "sum over strata differs from t^d (t - 1) chi(A, t)")
        self.extras["lhs"] = format_polynomial(check.lhs)
        self.extras["rhs"] = format_polynomial(check.rhs)
        p = self.config.prime
        if p is None:
            p, _ = good_prime(arrangement, self.config.prime_floor)
        size = spot_check_size(arrangement, p)
        if size > self.config.count_budget and self.config.prime is None:
            log.warning("spot check skipped", p=p, points=size, budget=self.config.count_budget)
            self.extras["spot"] = {"p": p, "skipped": f"{size} points exceed the budget of {self.config.count_budget}"}
        else:
            spot = ff_convolution_spot_check(arrangement, p, self.config.count_budget)
            report.record(spot.equal, f"counts at p={spot.p} disagree")
            self.extras["spot"] = {"p": spot.p, "strata_sum": spot.strata_sum, "omega": spot.omega, "rhs": spot.rhs}
        return report

    def _nbc(self, arrangement: Arrangement) -> VerificationReport:
        report = VerificationReport("nbc", seed=self.config.seed)
        bundle = invariants(arrangement)
        rng = np.random.default_rng(self.config.seed)
        orders = [arrangement.labels]
        orders += [tuple(int(v) for v in rng.permutation(arrangement.labels)) for _ in range(self.config.nbc_orders)]
        if self.config.order is not None:
            orders.append(self.config.order)
        for order in orders:
            report.record(nbc_counts(arrangement, order) == bundle.w_plus, f"#NBC differs from w+ under {order}")
            report.record(cij_via_nbc(arrangement, order) == bundle.cij, f"c_ij via NBC differs under {order}")
            for k in range(arrangement.dim + 1):
                for labels in nbc_sets(arrangement, k, order):
                    report.record(is_independent(arrangement, labels), f"NBC set {labels} is dependent")
        self.extras["orders"] = [list(order) for order in orders]
        report.absorb(structural_violations(arrangement))
        return report

    def _restrictions(self, arrangement: Arrangement) -> VerificationReport:
        report = VerificationReport("restrictions", seed=self.config.seed)
        report.absorb(verify_restriction_monotonicity(self._essential(arrangement), self.config.seed))
        return report

    def execute(self) -> CommandResult:
        arrangement = self.load()
        checks: dict[Check, Callable[[Arrangement], VerificationReport]] = {
            Check.CLASSIFICATION: self._classification,
            Check.MONOTONICITY: self._monotonicity,
            Check.CONVOLUTION: self._convolution,
            Check.NBC: self._nbc,
            Check.RESTRICTIONS: self._restrictions,
        }
        report = checks[self.config.check](arrangement)
        log.info(f"verify {report.name} finished", checked=report.checked, failures=len(report.failures))
        payload = report.to_dict()
        payload.update(self.extras)
        return CommandResult(dumps(payload), 0 if report.ok else 1)


def get_verify(config: RunConfig) -> VerifyCommand:
    return VerifyCommand(config)
