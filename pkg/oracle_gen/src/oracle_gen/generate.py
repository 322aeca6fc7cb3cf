"""Fixture generation: one job = one (L/Q, p, T0) instance -> JSON file.

The class-group content comes from the CAS backend; everything else
(group data, residue module, torsion-freeness, cardinalities) is
elementary arithmetic.  Output is canonical JSON (sorted keys, no
insignificant whitespace, big integers as decimal strings); regeneration
is deterministic up to the provenance timestamp.  On any failure no
partial file is left behind.
"""

import datetime
import json
import os
import tempfile
from dataclasses import dataclass

from . import assemble, cas
from .groupdata import (choose_t0, group_data, is_prime, p_part,
                        residue_minus_ppart)

SCHEMA_VERSION = "1.0"
_BIG = 1 << 53


@dataclass
class GenerationJob:
    conductor: int
    subgroup_gens: tuple = ()
    p: int = 3
    t0: int = None
    out_path: str = None
    backend: str = "table"
    gp_binary: str = "gp"
    partial_zeta: bool = False
    command: str = ""


def _encode_int(x):
    return str(x) if abs(x) >= _BIG else x


def canonical_json(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False)


def _validate_job(gd, job):
    p = job.p
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    t0 = job.t0 if job.t0 is not None else choose_t0(gd, p)
    if not is_prime(t0):
        raise ValueError("t0 must be prime")
    if gd.conductor % t0 == 0:
        raise ValueError("t0 = %d ramifies" % t0)
    if t0 == p:
        raise ValueError("t0 must avoid the p-adic place")
    if gd.w_roots_of_unity % t0 == 0:
        raise ValueError("t0 = %d does not leave E^{T0} torsion-free" % t0)
    return t0


def build_fixture_doc(job):
    gd = group_data(job.conductor, job.subgroup_gens)
    p = job.p
    t0 = _validate_job(gd, job)
    pieces = cas.query_class_pieces(job.backend, gd, p, t0,
                                    gp_binary=job.gp_binary)
    a_pieces = pieces["A_pieces"]
    a_t0_pieces = pieces["A_T0_pieces"]
    residue_card = residue_minus_ppart(gd, p, t0)
    mu = p_part(gd.w_roots_of_unity, p)

    if a_pieces:
        if gd.order % p == 0 or mu != 1:
            raise ValueError(
                "nontrivial A(p) with p dividing [L:Q] or w_L: the diagonal "
                "assembly needs isotypic idempotents, extend the assembler")
        mod_a = assemble.pieces_presentation(gd, p, a_pieces)
        card_a = assemble.pieces_cardinality(p, a_pieces)
    else:
        mod_a = assemble.unit_presentation(gd)
        card_a = 1

    # ray-sequence exactness pins |A^{T0}(p)| from elementary data
    if (residue_card * card_a) % mu:
        raise cas.CasError("backend data violates the ray-sequence identity: "
                           "mu = %d does not divide %d * %d"
                           % (mu, residue_card, card_a))
    card_a_t0 = residue_card * card_a // mu

    if a_t0_pieces != "derive":
        mod_a_t0 = assemble.pieces_presentation(gd, p, a_t0_pieces)
        if assemble.pieces_cardinality(p, a_t0_pieces) != card_a_t0:
            raise cas.CasError("tabulated ray-group structure contradicts "
                               "the ray-sequence cardinality")
    elif card_a_t0 == 1:
        mod_a_t0 = assemble.unit_presentation(gd)
    elif card_a == 1 and mu == 1:
        # A^{T0}(p) is canonically the p-part of the residue module
        mod_a_t0 = assemble.residue_presentation(gd, t0)
    else:
        raise ValueError(
            "A^{T0}(p) structure not derivable elementarily "
            "(|A(p)| = %d, mu = %d): needs a tabulated or CAS resolution"
            % (card_a, mu))

    mod_residue = assemble.residue_presentation(gd, t0)

    def module_doc(mod, card):
        return {
            "generators": mod["generators"],
            "relations": [[[_encode_int(c) for c in entry] for entry in row]
                          for row in mod["relations"]],
            "cardinality": str(card),
        }

    doc = {
        "schema_version": SCHEMA_VERSION,
        "conductor": gd.conductor,
        "subgroup_gens": list(gd.subgroup_gens),
        "p": job.p,
        "t0": t0,
        "w_L": _encode_int(gd.w_roots_of_unity),
        "element_order": list(gd.labels),
        "modules": {
            "A": module_doc(mod_a, card_a),
            "A_T0": module_doc(mod_a_t0, card_a_t0),
            "residue_minus": module_doc(mod_residue, residue_card),
        },
        "provenance": {
            "tool": "oracle-gen",
            "version": "0.1.0",
            "backend": job.backend,
            "command": job.command,
            "date": datetime.date.today().isoformat(),
        },
    }
    if job.partial_zeta:
        doc["partial_zeta"] = assemble.classical_partial_zeta(gd)
    return doc


def generate(job):
    """Run the job and write the fixture file atomically."""
    doc = build_fixture_doc(job)  # any failure -> no file written
    out = job.out_path or "f%d_p%d.json" % (job.conductor, job.p)
    directory = os.path.dirname(os.path.abspath(out))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(doc))
            fh.write("\n")
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return out


def strip_provenance(doc):
    out = dict(doc)
    out.pop("provenance", None)
    return out
