"""
The Montesinos test: search the reduced Jones polynomial of a link among the five normal forms, then optionally
refine the matches with the Kauffman polynomial values.

Norms only bound the search and pick the candidates; every match is an exact comparison in Q(zeta_20).
"""
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import repeat
from typing import Optional

from bracket_utilities import (closed_form_d, d_lower_bound, determinant_filter, invariants_from_quotient, jones,
                               determinant, v1_closed, v2_closed, v3_closed, v4_closed, v5_closed)
from classify_utilities import Form1, Form2, Form3, Form5, normal_form_invariants
from config import Config
from cyclotomic_utilities import QuotientElement, complex_norm, doteq_canonical, to_quotient
from exceptions import ConsistencyError
from kauffman_utilities import APowerClass, KauffmanEvaluator, f_invariants
from link_utilities import mirror
from log_config import configure_logger

logger = configure_logger(__name__)

# Safety net for the Form 1 loop; its bound grows geometrically so real inputs stop far earlier.
FORM1_MAX_M = 512

STAGE_JONES = "jones"
STAGE_KAUFFMAN = "jones+kauffman"


def _norm(coords, n):
    element = QuotientElement(list(coords) + [0] * (8 - len(coords)))
    return complex_norm(element, n)


# |1-t|, |1+t|, |1+t^2|, |1-t^2| and |t+1+1/t| = |1+t+t^2| at t = exp(n pi i/5), n = 1, 3
_NORMS = {
    n: {
        "1-t": _norm((1, 0, -1), n),
        "1+t": _norm((1, 0, 1), n),
        "1+t^2": _norm((1, 0, 0, 0, 1), n),
        "1-t^2": _norm((1, 0, 0, 0, -1), n),
        "t+1+1/t": _norm((1, 0, 1, 0, 1), n),
    }
    for n in (1, 3)
}


@dataclass(frozen=True)
class ProbeMatch:
    form: int
    k: Optional[int] = None
    l: Optional[int] = None
    mirrored: bool = False
    stage: str = STAGE_JONES

    def normal_form(self):
        """The matched normal form; None for Form 4, whose parameters the Jones polynomial cannot see."""
        if self.form == 1:
            return Form1(self.k, self.l)
        if self.form == 2:
            return Form2(self.k, self.l)
        if self.form == 3:
            return Form3(self.k, self.l)
        if self.form == 5:
            return Form5()
        return None

    def label(self):
        if self.form in (4, 5):
            return f"form {self.form}"
        return f"match form {self.form} for k={self.k}, l={self.l}"

    def priority(self):
        return self.form != 5, self.mirrored, self.form, (self.k or 0) + (self.l or 0)

    def as_dict(self):
        return {"form": self.form, "k": self.k, "l": self.l, "mirrored": self.mirrored, "stage": self.stage}


@dataclass(frozen=True)
class ProbeReport:
    name: str
    matches: tuple = ()

    @property
    def verdict(self):
        return "matched" if self.matches else "ruled_out"

    def primary(self):
        if not self.matches:
            return None
        return min(self.matches, key=ProbeMatch.priority)

    def as_dict(self):
        return {"name": self.name, "verdict": self.verdict, "matches": [m.as_dict() for m in self.matches]}


def form1_search_limit(v1):
    """Largest m = k + l with |t^2+1|^m <= |t+1| v1 + |1-t|^3 |t+1+1/t| at t = exp(pi i/5)."""
    norms = _NORMS[1]
    bound = norms["1+t"] * v1 + norms["1-t"] ** 3 * norms["t+1+1/t"] + Config.NORM_TOLERANCE
    m = 2
    while norms["1+t^2"] ** (m + 1) <= bound:
        m += 1
        if m > FORM1_MAX_M:
            raise ConsistencyError(f"Form 1 search does not terminate for v1 = {v1}")
    return m


def probe_form1(inv):
    """(k, l) of the Form 1 links whose reduced Jones polynomial equals inv.vbar."""
    norms = _NORMS[1]
    tolerance = Config.NORM_TOLERANCE
    target = norms["1+t"] * inv.v1
    matches = []
    for m in range(3, form1_search_limit(inv.v1) + 1):
        if abs(norms["1+t^2"] ** m - target) > norms["1-t"] ** m * norms["t+1+1/t"] + tolerance:
            continue
        for l in range(0, min(4, m) + 1):
            if not determinant_filter(inv.det, m - 2 * l):
                continue
            if inv.vbar == doteq_canonical(v1_closed(m - l, l)):
                matches.append((m - l, l))
    return matches


def _close(lhs, rhs):
    return abs(lhs - rhs) <= Config.NORM_TOLERANCE * max(1.0, abs(rhs))


def probe_form2(inv):
    """(k, l) of the Form 2 links matching inv, searched with the norms at t = exp(3 pi i/5)."""
    norms = _NORMS[3]
    tolerance = Config.NORM_TOLERANCE
    target = norms["1+t"] * inv.v3
    ceiling = target * (1 + tolerance)
    matches = []
    d_bound = d_lower_bound(inv.det)
    l = 1
    # d(L) of Form 2 is at least l - 1
    while closed_form_d(Form2(max(0, 3 - l), l))[0] <= d_bound:
        if norms["1-t^2"] ** l * norms["t+1+1/t"] > ceiling:
            break
        k = max(0, 3 - l)
        while True:
            value = norms["1-t^2"] ** l * norms["1-t"] ** k * norms["t+1+1/t"]
            if value > ceiling:
                break
            if _close(value, target) and inv.vbar == doteq_canonical(v2_closed(k, l)):
                matches.append((k, l))
            k += 1
        l += 1
    return matches


def probe_form3(inv):
    """(k, l) of the Form 3 links matching inv, searched with the norms at t = exp(pi i/5)."""
    norms = _NORMS[1]
    ceiling = inv.v1 * (1 + Config.NORM_TOLERANCE)
    matches = []
    d_bound = d_lower_bound(inv.det)
    l = 0
    while closed_form_d(Form3(0, l))[0] <= d_bound and norms["1+t"] ** l <= ceiling:
        k = 0
        while True:
            value = norms["1+t"] ** l * norms["1+t^2"] ** k
            if value > ceiling:
                break
            if _close(value, inv.v1) and inv.vbar == doteq_canonical(v3_closed(k, l)):
                matches.append((k, l))
            k += 1
        l += 1
    return matches


def probe_forms45(inv):
    """Direct comparison with the constant forms: Form 4 has reduced Jones polynomial 0."""
    matches = []
    if inv.vbar == doteq_canonical(v4_closed()):
        matches.append(4)
    if inv.vbar == doteq_canonical(v5_closed()):
        matches.append(5)
    return matches


def _jones_matches(inv, mirrored):
    matches = [ProbeMatch(1, k, l, mirrored) for k, l in probe_form1(inv)]
    matches += [ProbeMatch(2, k, l, mirrored) for k, l in probe_form2(inv)]
    matches += [ProbeMatch(3, k, l, mirrored) for k, l in probe_form3(inv)]
    matches += [ProbeMatch(form, mirrored=mirrored) for form in probe_forms45(inv)]
    return matches


def probe(d, name="", probe_mirror=None):
    """
    Search the normal forms for the reduced Jones polynomial of d and, unless disabled, of its mirror image.

    Args:
        probe_mirror: defaults to Config.PROBE_MIRROR

    Returns:
        ProbeReport
    """
    probe_mirror = Config.PROBE_MIRROR if probe_mirror is None else probe_mirror
    polynomial = jones(d)
    det = determinant(d, polynomial)
    variants = [(False, polynomial)]
    if probe_mirror:
        variants.append((True, polynomial.reflect()))

    matches = []
    for mirrored, variant in variants:
        inv = invariants_from_quotient(to_quotient(variant), det, variant)
        matches += _jones_matches(inv, mirrored)
    report = ProbeReport(name, tuple(matches))
    logger.debug(f"{name or d}: {len(matches)} Jones matches")
    return report


def _f_agree(f, target):
    return f.q1 == target.q1 and f.q2 == target.q2 and f.f1 == target.f1 and f.f2 == target.f2


def kauffman_refine(d, report, evaluator=None):
    """
    Drop the matches whose normal form has Kauffman values different from those of the diagram they were found
    on: d itself, or its mirror image for mirrored matches.

    Form 4 matches carry no parameters and are kept as they are.
    """
    evaluator = evaluator or KauffmanEvaluator()
    f = f_invariants(d, evaluator)
    # Lambda of the mirror image is Lambda at 1/a, the complex conjugate at these points
    f_mirror = replace(f, f1=APowerClass(f.f1.value.complex_conjugate()),
                       f2=APowerClass(f.f2.value.complex_conjugate()))
    kept = []
    for match in report.matches:
        nf = match.normal_form()
        if nf is None:
            kept.append(match)
            continue
        target = normal_form_invariants(nf, evaluator)
        if _f_agree(f_mirror if match.mirrored else f, target):
            kept.append(replace(match, stage=STAGE_KAUFFMAN))
        else:
            logger.debug(f"{report.name}: Kauffman values rule out {nf}")
    return ProbeReport(report.name, tuple(kept))


def format_human(report):
    """One line of the probe table: the name, then the primary match if there is one."""
    primary = report.primary()
    if primary is None:
        return report.name
    return f"{report.name} {primary.label()}"


def format_tsv(report):
    if not report.matches:
        return f"{report.name}\t-\t-\t-\truled_out"
    lines = []
    for match in report.matches:
        k = "-" if match.k is None else match.k
        l = "-" if match.l is None else match.l
        lines.append(f"{report.name}\t{match.form}\t{k}\t{l}\t{match.stage}")
    return "\n".join(lines)


def format_json(reports):
    return json.dumps([report.as_dict() for report in reports], indent=4)


@lru_cache(maxsize=None)
def _shared_evaluator():
    return KauffmanEvaluator()


def _init_worker(settings):
    for key, value in settings.items():
        setattr(Config, key, value)


def probe_record(record, refine=False):
    """Probe one knot table record."""
    diagram = record.diagram()
    report = probe(diagram, record.name)
    if refine:
        report = kauffman_refine(diagram, report, _shared_evaluator())
    return report


def probe_table(records, refine=None, jobs=None):
    """
    Probe every record of a knot table, in input order.

    Args:
        jobs: worker processes, Config.JOBS when None

    Returns:
        list of ProbeReport
    """
    refine = Config.REFINE if refine is None else refine
    jobs = Config.JOBS if jobs is None else jobs
    if jobs <= 1:
        return [probe_record(record, refine) for record in records]

    settings = {key: getattr(Config, key) for key in ("VERBOSE", "QUIET", "BRACKET_MAX_CROSSINGS",
                                                      "KAUFFMAN_MAX_CROSSINGS", "PROBE_MIRROR", "NORM_TOLERANCE")}
    logger.debug(f"probing {len(records)} knots on {jobs} processes")
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(settings,)) as pool:
        return list(pool.map(probe_record, records, repeat(refine)))
