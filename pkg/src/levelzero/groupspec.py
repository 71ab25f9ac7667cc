"""Group-spec files: parsing, canonical writing and hashing."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import yaml

from .catalog import by_name
from .linalg import identity
from .root_datum import RootDatum, RootDatumError, dual_root_datum, make_root_datum, transpose_automorphism
from .ss_classes import QLBAR, ZLBAR, FrobeniusDescriptor, make_frobenius, prime_of


class SpecError(ValueError):
    pass


LAMBDA_TAGS = {"qlbar": QLBAR, "zlbar": ZLBAR}


@dataclass(frozen=True)
class GroupSpec:
    rd: RootDatum
    F: FrobeniusDescriptor

    def to_dict(self) -> dict:
        d = {
            "name": self.rd.name,
            "rank": self.rd.rank,
            "roots": [list(r) for r in self.rd.roots],
            "coroots": [list(c) for c in self.rd.coroots],
            "simple": list(self.rd.simple_indices),
            "theta": [list(r) for r in self.F.theta.matrix],
            "q": self.F.q,
            "p": self.F.p,
            "lambda": self.F.lam,
        }
        if self.F.ell is not None:
            d["ell"] = self.F.ell
        if self.F.diagram_rotation is not None:
            d["diagram_rotation"] = list(self.F.diagram_rotation)
        return d

    def dumps(self) -> str:
        return dump_spec(self.to_dict())

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()


def dump_spec(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2) + "\n"


def parse_spec(text: str, ell=None, lam=None) -> GroupSpec:
    """Read a JSON or YAML spec; ``ell`` and ``lam`` override the file."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SpecError("cannot parse spec: %s" % exc) from None
    if not isinstance(raw, dict):
        raise SpecError("spec must be a mapping")
    try:
        if "preset" in raw:
            rd = by_name(str(raw["preset"]))
            if "name" in raw:
                rd = make_root_datum(rd.rank, rd.roots, rd.coroots, rd.simple_indices, str(raw["name"]))
        else:
            for key in ("rank", "roots", "coroots"):
                if key not in raw:
                    raise SpecError("spec is missing field %r" % key)
            rd = make_root_datum(int(raw["rank"]), raw["roots"], raw["coroots"], raw.get("simple"), str(raw.get("name", "")))
        if "q" not in raw:
            raise SpecError("spec is missing field 'q'")
        q = int(raw["q"])
        p = prime_of(q)
        if "p" in raw and int(raw["p"]) != p:
            raise SpecError("q=%d is not a power of p=%s" % (q, raw["p"]))
        ell = ell if ell is not None else raw.get("ell")
        tag = lam if lam is not None else raw.get("lambda", QLBAR)
        tag = LAMBDA_TAGS.get(str(tag).lower(), tag)
        F = make_frobenius(rd, q, raw.get("theta"), ell if ell is None else int(ell), tag, raw.get("diagram_rotation"))
    except SpecError:
        raise
    except (RootDatumError, ValueError, TypeError, KeyError) as exc:
        raise SpecError(str(exc)) from None
    return GroupSpec(rd, F)


def load_spec(path, ell=None, lam=None) -> GroupSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), ell, lam)


def dual_spec(spec: GroupSpec) -> GroupSpec:
    rd = dual_root_datum(spec.rd)
    th = transpose_automorphism(spec.rd, spec.F.theta)
    F = make_frobenius(rd, spec.F.q, th.matrix, spec.F.ell, spec.F.lam, spec.F.diagram_rotation)
    return GroupSpec(rd, F)


def default_theta(rank: int):
    return identity(rank)
