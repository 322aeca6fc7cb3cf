"""JSON schema, loader, and validator for class-group fixtures.

A fixture records, for one (L/Q, p, T0) instance: the extension data,
square relation matrices over the minus group ring presenting the p-parts
of A_{L,S_infty}, A_{L,S_infty}^{T0} and (O_L/M_{T0})^x-minus, declared
cardinalities (p-powers), an optional partial-zeta table, and provenance.

Serialization is canonical: sorted keys, no insignificant whitespace,
integers beyond 53-bit range (and all cardinalities) as decimal strings.
Group-ring coefficient arrays are indexed by the explicit `element_order`
list of smallest-residue labels sigma_a, making files self-describing and
independent of any library's internal group enumeration.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .extension import ExtensionDatum
from .fitting import ModulePresentation
from .groupring import GroupRingElt, MinusContext
from .intlinalg import p_part
from .stickelberger import PlaceSet, torsionfree

SCHEMA_VERSION = "1.0"
MODULE_NAMES = ("A", "A_T0", "residue_minus")
_BIG = 1 << 53


class FixtureError(ValueError):
    pass


@dataclass
class ModuleData:
    generators: int
    relations: list  # rows of entries; entry = list of ints over element_order
    cardinality: int  # declared p-part


@dataclass
class Fixture:
    conductor: int
    subgroup_gens: list
    p: int
    t0: int
    w_roots_of_unity: int
    element_order: list
    modules: dict
    partial_zeta: dict | None
    provenance: dict
    _ext: ExtensionDatum = field(default=None, repr=False)

    def extension(self):
        if self._ext is None:
            self._ext = ExtensionDatum(self.conductor, self.subgroup_gens)
        return self._ext

    def t0_places(self):
        return PlaceSet.make(finite=[self.t0])

    def group_ring_element(self, coeff_array):
        ext = self.extension()
        G = ext.galois_group
        coeffs = {}
        for label, c in zip(self.element_order, coeff_array):
            g = ext.sigma[label]
            coeffs[g] = coeffs.get(g, 0) + c
        return GroupRingElt(G, coeffs)

    def presentation(self, name, minus_ctx=None):
        ext = self.extension()
        ctx = minus_ctx or MinusContext(ext.galois_group, ext.j)
        data = self.modules[name]
        rows = [[self.group_ring_element(entry) for entry in row]
                for row in data.relations]
        return ModulePresentation(ctx, rows, ngens=data.generators, check_finite=False)

    def partial_zeta_table(self):
        if self.partial_zeta is None:
            return None
        ext = self.extension()
        return {ext.sigma[label]: Fraction(v) for label, v in
                zip(self.element_order, self.partial_zeta["values"])}


def _decode_int(x):
    if isinstance(x, str):
        return int(x)
    if isinstance(x, int):
        return x
    raise FixtureError("expected integer or decimal string, got %r" % (x,))


def _encode_int(x):
    return str(x) if abs(x) >= _BIG else x


def parse(doc):
    """Build a Fixture from a parsed JSON document (no validation)."""
    try:
        version = doc["schema_version"]
        major = str(version).split(".")[0]
        if major != SCHEMA_VERSION.split(".")[0]:
            raise FixtureError("unsupported schema major version: %r" % (version,))
        modules = {}
        for name in MODULE_NAMES:
            m = doc["modules"][name]
            relations = [[[_decode_int(c) for c in entry] for entry in row]
                         for row in m["relations"]]
            modules[name] = ModuleData(int(m["generators"]), relations,
                                       _decode_int(m["cardinality"]))
        return Fixture(
            conductor=int(doc["conductor"]),
            subgroup_gens=[int(a) for a in doc["subgroup_gens"]],
            p=int(doc["p"]),
            t0=int(doc["t0"]),
            w_roots_of_unity=_decode_int(doc["w_L"]),
            element_order=[int(a) for a in doc["element_order"]],
            modules=modules,
            partial_zeta=doc.get("partial_zeta"),
            provenance=dict(doc.get("provenance", {})),
        )
    except KeyError as exc:
        raise FixtureError("missing fixture field: %s" % (exc,)) from exc


def load(path):
    """Load and fully validate a fixture file; raise FixtureError listing
    every violated invariant otherwise."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    fixture = parse(doc)
    problems = validate(fixture)
    if problems:
        raise FixtureError("invalid fixture %s: %s" % (path, "; ".join(problems)))
    return fixture


def validate(fixture):
    """Return the list of violated invariants (empty = valid)."""
    problems = []
    try:
        ext = fixture.extension()
    except (ValueError, KeyError) as exc:
        return ["extension data invalid: %s" % exc]
    G = ext.galois_group
    if fixture.w_roots_of_unity != ext.w_roots_of_unity:
        problems.append("declared w_L = %d but computed %d"
                        % (fixture.w_roots_of_unity, ext.w_roots_of_unity))
    labels = sorted(ext.element_label[g] for g in G.elements())
    if sorted(fixture.element_order) != labels:
        problems.append("element_order does not enumerate the Galois group")
    if fixture.p < 3 or not _is_prime(fixture.p):
        problems.append("p = %d is not an odd prime" % fixture.p)
    if ext.conductor % fixture.t0 == 0 or not _is_prime(fixture.t0):
        problems.append("t0 = %d is not an unramified prime" % fixture.t0)
    elif not torsionfree(ext, fixture.t0_places()):
        problems.append("E^{T0} has torsion for t0 = %d" % fixture.t0)
    mc = MinusContext(G, ext.j)
    for name in MODULE_NAMES:
        data = fixture.modules[name]
        if len(data.relations) != data.generators:
            problems.append("%s: presentation is not square" % name)
            continue
        if any(len(row) != data.generators for row in data.relations):
            problems.append("%s: ragged relation matrix" % name)
            continue
        if any(len(entry) != len(fixture.element_order)
               for row in data.relations for entry in row):
            problems.append("%s: coefficient array length mismatch" % name)
            continue
        try:
            pres = fixture.presentation(name, mc)
        except ValueError as exc:
            problems.append("%s: %s" % (name, exc))
            continue
        if not pres.has_finite_cokernel():
            problems.append("%s: infinite cokernel" % name)
            continue
        declared = data.cardinality
        if p_part(declared, fixture.p) != declared:
            problems.append("%s: declared cardinality %d is not a power of p"
                            % (name, declared))
        actual = p_part(pres.cardinality(), fixture.p)
        if actual != declared:
            problems.append("%s: declared cardinality %d but p-part of the "
                            "presented module is %d" % (name, declared, actual))
    if fixture.partial_zeta is not None:
        values = fixture.partial_zeta.get("values", [])
        if len(values) != G.order:
            problems.append("partial_zeta: table misses group elements")
        else:
            try:
                for v in values:
                    Fraction(v)
            except (ValueError, ZeroDivisionError):
                problems.append("partial_zeta: non-rational value")
    return problems


def to_document(fixture):
    """Canonical JSON document for a fixture."""
    modules = {}
    for name in MODULE_NAMES:
        data = fixture.modules[name]
        modules[name] = {
            "generators": data.generators,
            "relations": [[[_encode_int(c) for c in entry] for entry in row]
                          for row in data.relations],
            "cardinality": str(data.cardinality),
        }
    doc = {
        "schema_version": SCHEMA_VERSION,
        "conductor": fixture.conductor,
        "subgroup_gens": list(fixture.subgroup_gens),
        "p": fixture.p,
        "t0": fixture.t0,
        "w_L": _encode_int(fixture.w_roots_of_unity),
        "element_order": list(fixture.element_order),
        "modules": modules,
        "provenance": fixture.provenance,
    }
    if fixture.partial_zeta is not None:
        doc["partial_zeta"] = fixture.partial_zeta
    return doc


def serialize(fixture):
    """Canonical byte serialization: sorted keys, no extra whitespace."""
    return canonical_json(to_document(fixture))


def canonical_json(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
