"""Random class-two central extensions for completeness audits."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import apply_basis_change, central_extension, is_class_two
from .catalog import build, list_for
from .classifier import ClassifierError, NormalizationFailure, classify
from .io import dumps
from .linalg import Field
from .randgen import random_invertible


@dataclass
class SampleReport:
    n: int
    d: int
    field: str
    count: int
    seed: int
    histogram: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)
    outside_list: list = dc_field(default_factory=list)
    rejected: int = 0

    def as_dict(self) -> dict:
        return {
            "arity": self.n,
            "dim": self.d,
            "field": self.field,
            "count": self.count,
            "seed": self.seed,
            "histogram": dict(sorted(self.histogram.items())),
            "failures": len(self.failures),
            "failure_files": [f.get("file") for f in self.failures if f.get("file")],
            "outside_list": self.outside_list,
            "rejected_draws": self.rejected,
        }


def random_extension(n: int, d: int, F: Field, rng: random.Random, conjugate: bool = True):
    """A class-two extension of a random catalog quotient of dimension d-1, or None.

    The cocycle is uniform on n-tuples avoiding the quotient's derived
    coordinates, so those stay central.
    """
    quotients = list_for(n, d - 1, F).labels
    qlab = rng.choice(quotients)
    q = build(qlab, F)
    derived_idx = set(q.derived.pivots)
    free = [i + 1 for i in range(q.d) if i not in derived_idx]
    coc = {}
    for t in combinations(free, n):
        x = F(rng.randrange(F.p)) if F.is_finite else F(rng.randint(-2, 2))
        if x:
            coc[t] = x
    a = central_extension(q, coc)
    if not is_class_two(a):
        return qlab, None
    if conjugate:
        a = apply_basis_change(a, random_invertible(F, a.d, rng))
    return qlab, a


def sample_extensions(n: int, d: int, F: Field, count: int, seed: int, out_dir: str | None = None,
                      conjugate: bool = True, max_draws: int | None = None) -> SampleReport:
    """Classify ``count`` random class-two extensions and tally the labels."""
    rng = random.Random(seed)
    rep = SampleReport(n, d, str(F), count, seed)
    allowed = set(list_for(n, d, F).labels)
    done = 0
    draws = 0
    limit = max_draws if max_draws is not None else 50 * count
    while done < count and draws < limit:
        draws += 1
        qlab, a = random_extension(n, d, F, rng, conjugate)
        if a is None:
            rep.rejected += 1
            continue
        done += 1
        try:
            res = classify(a)
        except NormalizationFailure as e:
            rec = {"index": done - 1, "quotient": str(qlab), "error": str(e)}
            if out_dir:
                os.makedirs(out_dir, exist_ok=True)
                path = os.path.join(out_dir, f"failure_{seed}_{done - 1:05d}.json")
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(dumps(a))
                rec["file"] = path
            rep.failures.append(rec)
            continue
        except ClassifierError as e:
            rep.failures.append({"index": done - 1, "quotient": str(qlab), "error": f"{type(e).__name__}: {e}"})
            continue
        name = str(res.label)
        rep.histogram[name] = rep.histogram.get(name, 0) + 1
        if res.label not in allowed:
            rep.outside_list.append(name)
    rep.count = done
    return rep
