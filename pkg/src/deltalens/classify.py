"""Class predicates on indexed data, cross-checked against the lens side.

Each tag is decided twice: once directly on the indexed split
multivalued function (a condition on the assigned spans and splittings)
and once by the corresponding functor- or lens-level predicate applied
to the category of elements.  Agreement of the two verdicts on every
tag is the module-level theorem exercised by the law suites.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fincat
from .fincat import pair
from .idx import (
    IndexedSmf,
    elements,
    fibres,
    is_split_opfibration_idx,
)
from .lens import (
    cofree_lens,
    is_cofree,
    is_split_opfibration,
    underlying_retrofunctor,
)

TAGS = (
    "discrete_opfibration",
    "fully_faithful",
    "injective_on_objects",
    "bijective_on_objects",
    "surjective_on_objects",
    "faithful",
    "discrete_fibration",
    "split_opfibration",
    "cofree",
)


@dataclass
class Verdict:
    idx_level: bool
    lens_level: bool

    @property
    def agree(self) -> bool:
        return self.idx_level == self.lens_level


@dataclass
class ClassReport:
    verdicts: dict[str, Verdict]

    @property
    def all_agree(self) -> bool:
        return all(v.agree for v in self.verdicts.values())

    def as_dict(self) -> dict:
        return {
            tag: {
                "idx": v.idx_level,
                "lens": v.lens_level,
                "agree": v.agree,
            }
            for tag, v in self.verdicts.items()
        }


def _pairing_bijective(x: IndexedSmf, u: str) -> bool:
    c = x.carriers[u]
    pairs = [(c.s[e], c.t[e]) for e in c.elems]
    full = [
        (a, b)
        for a in x.obj_sets[x.base.src(u)]
        for b in x.obj_sets[x.base.tgt(u)]
    ]
    return len(pairs) == len(set(pairs)) and set(pairs) == set(full)


def _pairing_injective(x: IndexedSmf, u: str) -> bool:
    c = x.carriers[u]
    pairs = [(c.s[e], c.t[e]) for e in c.elems]
    return len(pairs) == len(set(pairs))


def _s_bijective_with_inverse_sigma(x: IndexedSmf, u: str) -> bool:
    c = x.carriers[u]
    if len(c.elems) != len(x.obj_sets[x.base.src(u)]):
        return False
    values = set(c.s.values())
    if values != set(x.obj_sets[x.base.src(u)]):
        return False
    return all(c.sigma[c.s[e]] == e for e in c.elems)


def _t_bijective(x: IndexedSmf, u: str) -> bool:
    c = x.carriers[u]
    values = list(c.t.values())
    return (
        len(c.elems) == len(x.obj_sets[x.base.tgt(u)])
        and len(values) == len(set(values))
        and set(values) == set(x.obj_sets[x.base.tgt(u)])
    )


def _idx_cofree(x: IndexedSmf) -> bool:
    """The spans depend only on the object pair: the canonical
    comparison into the fibres of the cofree lens on the underlying
    retrofunctor is a bijection over every base morphism."""
    lens, _ = elements(x)
    cf = fibres(cofree_lens(underlying_retrofunctor(lens)))
    for o in x.base.objects:
        if len(cf.obj_sets[o]) != len(x.obj_sets[o]):
            return False
    for u in x.base.morphisms:
        image = {pair(pair(u, alpha), u) for alpha in x.carriers[u].elems}
        if image != set(cf.carriers[u].elems):
            return False
    return True


def classify(x: IndexedSmf) -> ClassReport:
    lens, _ = elements(x)
    fun = lens.f
    base = x.base
    mors = list(base.morphisms)

    idx_side = {
        "discrete_opfibration": all(
            _s_bijective_with_inverse_sigma(x, u) for u in mors
        ),
        "fully_faithful": all(_pairing_bijective(x, u) for u in mors),
        "injective_on_objects": all(
            len(x.obj_sets[o]) <= 1 for o in base.objects
        ),
        "bijective_on_objects": all(
            len(x.obj_sets[o]) == 1 for o in base.objects
        ),
        "surjective_on_objects": all(
            len(x.obj_sets[o]) >= 1 for o in base.objects
        ),
        "faithful": all(_pairing_injective(x, u) for u in mors),
        "discrete_fibration": all(_t_bijective(x, u) for u in mors),
        "split_opfibration": is_split_opfibration_idx(x),
        "cofree": _idx_cofree(x),
    }
    lens_side = {
        "discrete_opfibration": fincat.is_discrete_opfibration(fun),
        "fully_faithful": fincat.is_fully_faithful(fun),
        "injective_on_objects": fincat.is_injective_on_objects(fun),
        "bijective_on_objects": fincat.is_bijective_on_objects(fun),
        "surjective_on_objects": fincat.is_surjective_on_objects(fun),
        "faithful": fincat.is_faithful(fun),
        "discrete_fibration": fincat.is_discrete_fibration(fun),
        "split_opfibration": is_split_opfibration(lens, "weakly_opcartesian"),
        "cofree": is_cofree(lens),
    }
    return ClassReport(
        {tag: Verdict(idx_side[tag], lens_side[tag]) for tag in TAGS}
    )
