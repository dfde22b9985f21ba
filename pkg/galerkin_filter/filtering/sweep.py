"""Refinement sweeps over a model family, with reference escalation."""
from __future__ import annotations
from asyncio import AbstractEventLoop, gather, get_event_loop
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from logging import getLogger
from typing import Any, Dict, List, Optional, Sequence

from ..errors import InvalidReferenceDimError, ScheduleError
from ..galerkin import Interval, Pencil, a_gram, default_shift
from ..linalg import DEFAULT_TOL, hausdorff_distance, subspace_gap
from ..models import FamilyLike, ModelFamily, get_family
from .base import (
    ZERO_CLUSTER_FLOOR,
    STABILIZATION_TOL,
    AutoGapPolicy,
    EscalateReference,
    Escalation,
    ExpectedDimPolicy,
    FilteredSolution,
    FilterPolicy,
    ReferencePolicy,
    ReferenceSubspace,
    SolveStatus,
    SweepRecord,
    SweepReport,
    SweepStatus,
)
from .projection import filtered_solve


log = getLogger(__name__)


class SweepRunner:
    """
    Run a filtered solve at every refinement of a schedule.

    `run_sync` evaluates the schedule serially. `run` evaluates it
    concurrently using the asyncio event loop's ThreadPoolExecutor. Records
    come back in schedule order either way.

    Under an escalating reference policy, a finest record whose head of
    sigma_P collapses to nothing, or saturates dim L without an expected
    dimension, moves the reference to the next trial space and repeats the
    whole schedule.
    """

    _family: ModelFamily
    _schedule: List[int]
    _executor: Optional[ThreadPoolExecutor]

    @classmethod
    def create(
        cls,
        family: FamilyLike,
        delta: Interval,
        schedule: Optional[Sequence[int]] = None,
        reference_policy: Optional[ReferencePolicy] = None,
        policy: Optional[FilterPolicy] = None,
        **kwargs: Any,
    ) -> SweepRunner:
        """Create a runner, defaulting to the family's schedule."""
        model = get_family(family)
        schedule = list(schedule or model.default_schedule)

        if reference_policy is None:
            reference_policy = EscalateReference(
                start=model.coarsest, max=schedule[0]
            )

        return cls(
            family=model,
            delta=delta,
            schedule=schedule,
            reference_policy=reference_policy,
            policy=policy or AutoGapPolicy(),
            **kwargs,
        )

    def __init__(
        self,
        family: ModelFamily,
        delta: Interval,
        schedule: Sequence[int],
        reference_policy: ReferencePolicy,
        policy: FilterPolicy,
        *,
        diagnostics: bool = False,
        stabilization_tol: float = STABILIZATION_TOL,
        tol: float = DEFAULT_TOL,
        executor: Optional[ThreadPoolExecutor] = None,
    ) -> None:
        """Initialize a SweepRunner."""
        self._family = family
        self._delta = delta
        self._schedule = [family.check_refinement(param) for param in schedule]
        self._reference_policy = reference_policy
        self._policy = policy
        self._diagnostics = diagnostics
        self._stabilization_tol = stabilization_tol
        self._tol = tol
        self._executor = executor
        self._known = family.reference_spectrum().eigenvalues_in(delta)

        if not self._schedule:
            raise ScheduleError("refinement schedule is empty")

        if any(a >= b for a, b in zip(self._schedule, self._schedule[1:])):
            raise ScheduleError(
                f"refinement schedule {self._schedule} is not strictly refining"
            )

    @property
    def _loop(self) -> AbstractEventLoop:
        return get_event_loop()

    @property
    def _start(self) -> int:
        if isinstance(self._reference_policy, EscalateReference):
            return int(self._reference_policy.start)
        return int(self._reference_policy.param)

    def run_sync(self) -> SweepReport:
        """Evaluate the schedule serially."""
        reference = self._start
        escalations: List[Escalation] = []

        while True:
            records = [self.evaluate(param, reference) for param in self._schedule]
            upgrade = self._advance(records, reference, escalations)

            if upgrade is None:
                return self._report(records, reference, escalations)

            reference = upgrade

    async def run(self) -> SweepReport:
        """Evaluate each pass of the schedule concurrently."""
        reference = self._start
        escalations: List[Escalation] = []

        while True:
            tasks = [
                self._loop.run_in_executor(
                    self._executor, partial(self.evaluate, param, reference)
                )
                for param in self._schedule
            ]
            records = list(await gather(*tasks))
            upgrade = self._advance(records, reference, escalations)

            if upgrade is None:
                return self._report(records, reference, escalations)

            reference = upgrade

    def evaluate(self, param: int, reference_param: int) -> SweepRecord:
        """Run the filter on one trial space against one reference space."""
        family = self._family
        pencil = family.assemble(param)
        reference = ReferenceSubspace.nested(
            family.inclusion_matrix(reference_param, param),
            pencil.mass,
            label=family.tag(reference_param),
        )
        solution = filtered_solve(
            pencil, self._delta, reference, self._policy, tol=self._tol
        )
        ritz = [] if solution.ritz is None else solution.ritz.values.tolist()

        record = SweepRecord(
            refinement=family.tag(param),
            reference=reference.label,
            dim_reference=reference.dim,
            dim_window=solution.window.dim,
            galerkin_values=solution.window.mu.tolist(),
            sigma_p=solution.selection.sigma_p.tolist(),
            d_selected=solution.selection.d,
            gamma_est=solution.selection.gamma_est,
            ritz_values=ritz,
            status=solution.status,
            dist_to_reference=(
                hausdorff_distance(ritz, self._known)
                if ritz and self._known
                else None
            ),
        )

        if self._diagnostics:
            record = record.copy(update=self._gaps(param, pencil, solution))

        log.debug(
            f"{record.refinement} against {record.reference}: "
            f"d_n={record.dim_window} d={record.d_selected} ritz={ritz}"
        )
        return record

    def _gaps(
        self, param: int, pencil: Pencil, solution: FilteredSolution
    ) -> Dict[str, float]:
        interpolants = self._family.eigenvector_interpolants(param, self._delta)

        if interpolants is None or solution.ritz is None:
            return {}

        shift = default_shift(solution.spectrum)
        energy = a_gram(pencil, shift, solution.spectrum)
        vectors = solution.ritz.vectors

        return {
            "a_shift": shift,
            "delta_gap": subspace_gap(vectors, interpolants, pencil.mass),
            "delta_a_gap": subspace_gap(vectors, interpolants, energy),
        }

    def _advance(
        self,
        records: List[SweepRecord],
        reference: int,
        escalations: List[Escalation],
    ) -> Optional[int]:
        policy = self._reference_policy
        reason = _escalation_reason(records[-1], self._policy)

        if not isinstance(policy, EscalateReference) or reason is None:
            return None

        upgrade = self._family.next_refinement(reference)
        # the reference must stay nested in the coarsest trial space
        if upgrade > min(policy.max, self._schedule[0]):
            log.warning(
                f"reference escalation exhausted at {self._family.tag(reference)}: "
                f"{reason}"
            )
            return None

        escalation = Escalation(
            from_reference=self._family.tag(reference),
            to_reference=self._family.tag(upgrade),
            reason=reason,
        )
        log.info(
            f"escalating reference {escalation.from_reference} -> "
            f"{escalation.to_reference}: {reason}"
        )
        escalations.append(escalation)
        return upgrade

    def _report(
        self,
        records: List[SweepRecord],
        reference: int,
        escalations: List[Escalation],
    ) -> SweepReport:
        stable_from = _stable_from(records, self._stabilization_tol)
        pending = isinstance(self._reference_policy, EscalateReference) and (
            _escalation_reason(records[-1], self._policy) is not None
        )
        stabilized = stable_from is not None and not pending

        report = SweepReport(
            model=self._family.id,
            interval=self._delta,
            policy=self._policy.describe(),
            reference=self._family.tag(reference),
            status=SweepStatus.STABILIZED if stabilized else SweepStatus.UNDETERMINED,
            head_count=records[-1].d_selected if stabilized else None,
            stabilized_at=(
                records[stable_from].refinement
                if stabilized and stable_from is not None
                else None
            ),
            records=records,
            escalations=escalations,
        )

        d_reference = _reference_dim(report, self._policy)
        if d_reference is not None:
            flags = pollution_flag(report, d_reference)
            report.records = [
                record.copy(update={"pollution_flag": flag})
                for record, flag in zip(report.records, flags)
            ]

        return report


def sweep(
    family: FamilyLike,
    delta: Interval,
    schedule: Optional[Sequence[int]] = None,
    reference_policy: Optional[ReferencePolicy] = None,
    policy: Optional[FilterPolicy] = None,
    **kwargs: Any,
) -> SweepReport:
    """Run a refinement sweep serially; see SweepRunner for the options."""
    runner = SweepRunner.create(
        family, delta, schedule, reference_policy, policy, **kwargs
    )
    return runner.run_sync()


def pollution_flag(report: SweepReport, d_reference: int) -> List[bool]:
    """Flag every record whose window is larger than `d_reference`."""
    if d_reference <= 0:
        raise InvalidReferenceDimError(
            f"reference dimension must be positive, got {d_reference}"
        )

    return [record.dim_window > d_reference for record in report.records]


def _has_head(record: SweepRecord) -> bool:
    return record.d_selected >= 1 and min(record.head) >= ZERO_CLUSTER_FLOOR


def _escalation_reason(record: SweepRecord, policy: FilterPolicy) -> Optional[str]:
    if record.status == SolveStatus.EMPTY_WINDOW:
        return None

    if not _has_head(record):
        return "collapse: no non-zero eigenvalue of S selected"

    # a known dimension fixes d_selected, so only a collapse can escalate
    if isinstance(policy, ExpectedDimPolicy):
        return None

    if record.d_selected == record.dim_reference:
        return f"saturation: head count equals dim L = {record.dim_reference}"

    return None


def _agree(previous: SweepRecord, current: SweepRecord, tol: float) -> bool:
    if not (_has_head(previous) and _has_head(current)):
        return False

    if previous.d_selected != current.d_selected:
        return False

    return all(abs(a - b) < tol for a, b in zip(previous.head, current.head))


def _stable_from(records: List[SweepRecord], tol: float) -> Optional[int]:
    """Get the first index of the agreeing run that ends the sweep."""
    start = None

    for index in range(len(records) - 1, 0, -1):
        if not _agree(records[index - 1], records[index], tol):
            break
        start = index - 1

    return start


def _reference_dim(report: SweepReport, policy: FilterPolicy) -> Optional[int]:
    if isinstance(policy, ExpectedDimPolicy):
        return int(policy.dim)

    if report.head_count:
        return report.head_count

    heads = [record.d_selected for record in report.records if _has_head(record)]
    return heads[-1] if heads else None
