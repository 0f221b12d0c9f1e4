"""Named graph families and their on-disk form (.rim text plus a .meta sidecar)."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .cayley import (
    BlossomingSequence,
    CayleyGraph,
    FiniteGroup,
    GeneratorSet,
    Z2Power,
    alternating_group_4,
    build_blossoming,
    build_cayley,
    parse_cycles,
)
from .lps import lps_generators
from .rim import RIM, dumps_rim, graph_diameter, loads_rim

FAMILIES = ("a4", "z2r", "lps", "file")
# with (12)(34) first the A4 sequence shrinks 12 -> 6 -> 3 -> 1
A4_DEFAULT_GENERATORS = ("(12)(34)", "(123)")


class FamilyError(ValueError):
    pass


def family_generators(family: str, params: dict[str, str]) -> tuple[FiniteGroup, GeneratorSet]:
    if family == "a4":
        gens = params.get("generators", " ".join(A4_DEFAULT_GENERATORS)).split()
        group: FiniteGroup = alternating_group_4()
        base = [parse_cycles(g, 4) for g in gens]
        if any(b not in set(group.elements()) for b in base):
            raise FamilyError("A4 generators must be even permutations")
        return group, GeneratorSet(group, base)
    if family == "z2r":
        r = int(params.get("r", "3"))
        if not 1 <= r <= 16:
            raise FamilyError("z2r needs 1 <= r <= 16")
        group = Z2Power(r)
        base = [int(x) for x in params.get("generators", " ".join(str(1 << i) for i in range(r))).split()]
        if any(not 0 < b < (1 << r) for b in base):
            raise FamilyError("z2r generators must be nonzero r-bit integers")
        return group, GeneratorSet(group, base)
    if family == "lps":
        return lps_generators(int(params["p"]), int(params["q"]))
    raise FamilyError(f"family {family!r} has no group structure")


@dataclass
class GraphBundle:
    family: str
    params: dict[str, str]
    rim: RIM
    cayley: CayleyGraph | None = None
    gens: GeneratorSet | None = None
    trim: bool = True
    full_orbit: bool = False
    _sequence: BlossomingSequence | None = field(default=None, repr=False)

    @property
    def sequence(self) -> BlossomingSequence:
        if self.cayley is None or self.gens is None:
            raise FamilyError("graph loaded from a plain file has no blossoming schedule")
        if self._sequence is None:
            self._sequence = build_blossoming(
                self.cayley.group, self.gens, trim=self.trim, full_orbit=self.full_orbit, cayley=self.cayley
            )
        return self._sequence

    def meta(self) -> dict[str, str]:
        out = {"family": self.family}
        out.update(self.params)
        out.update(
            {
                "trim": str(int(self.trim)),
                "full_orbit": str(int(self.full_orbit)),
                "vertices": str(self.rim.vertex_count),
                "arity": str(self.rim.arity),
                "edges": str(self.rim.edge_count),
                "digest": self.rim.digest().hex(),
            }
        )
        if self.cayley is not None:
            out.update(self.cayley.group.describe())
            out["generator_list"] = "; ".join(repr(s) for s in self.gens.base)
            seq = self.sequence
            out["diameter"] = str(graph_diameter(self.rim))
            out["rounds"] = str(seq.R)
            out["orders"] = " ".join(str(m) for m in seq.orders)
            out["schedule"] = " ".join(
                f"{st.base_index}:{','.join(str(a) for a in st.exponents)}" for st in seq.steps
            )
            out["sizes"] = " ".join(str(g.vertex_count) for g in seq.graphs)
        return out


def build_bundle(family: str, params: dict[str, str], trim: bool = True, full_orbit: bool = False) -> GraphBundle:
    group, gens = family_generators(family, params)
    cay = build_cayley(group, gens)
    return GraphBundle(family, dict(params), cay.rim, cay, gens, trim, full_orbit)


def save_bundle(bundle: GraphBundle, path: str | Path) -> None:
    path = Path(path)
    path.write_text(dumps_rim(bundle.rim))
    meta = bundle.meta()
    Path(str(path) + ".meta").write_text("".join(f"{k}: {v}\n" for k, v in meta.items()))


def read_meta(path: str | Path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text().splitlines():
        if line.strip():
            key, _, value = line.partition(":")
            out[key.strip()] = value.strip()
    return out


_PARAM_KEYS = {"a4": ("generators",), "z2r": ("r", "generators"), "lps": ("p", "q"), "file": ()}


def load_bundle(path: str | Path) -> GraphBundle:
    """Read a .rim file and rebuild its group structure from the sidecar, if any."""
    path = Path(path)
    rim = loads_rim(path.read_text())
    meta_path = Path(str(path) + ".meta")
    if not meta_path.exists():
        return GraphBundle("file", {}, rim)
    meta = read_meta(meta_path)
    family = meta.get("family", "file")
    if family not in FAMILIES:
        raise FamilyError(f"unknown family {family!r}")
    params = {k: meta[k] for k in _PARAM_KEYS[family] if k in meta}
    if family == "file":
        return GraphBundle("file", {}, rim)
    bundle = build_bundle(family, params, meta.get("trim", "1") == "1", meta.get("full_orbit", "0") == "1")
    if not bundle.rim.same_structure(rim):
        raise FamilyError("graph file does not match the graph its metadata describes")
    return bundle


def a4_sequence() -> BlossomingSequence:
    return build_bundle("a4", {}).sequence


def z2r_sequence(r: int, generators: list[int] | None = None) -> BlossomingSequence:
    params = {"r": str(r)}
    if generators is not None:
        params["generators"] = " ".join(str(g) for g in generators)
    return build_bundle("z2r", params).sequence


def k4_sequence() -> BlossomingSequence:
    """K4 as the Cayley graph of (Z/2)^2 with its three nonzero elements."""
    return z2r_sequence(2, [1, 2, 3])


def lps_bundle(p: int, q: int) -> GraphBundle:
    return build_bundle("lps", {"p": str(p), "q": str(q)})

