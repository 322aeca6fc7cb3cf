"""Table-driven class-data backend, runnable as `python -m oracle_gen.table_cas`.

Serves the line protocol of `cas.py` from a curated knowledge base:
minus class numbers h^- of the cyclotomic fields of conductor <= 40
(classical tables) together with the isotypic structure of the few
nontrivial p-parts that arise at odd p coprime to the degree, and the
ray-group extension resolutions derived in the repository notes (for
conductor 23, p = 3, t0 = 5 the minus ray group is cyclic of order 9:
the generator class of a prime above 2 maps to an element of exact
order 3 in (O/5)^x / im(units), so the extension of A by the residue
line does not split).

This backend exists for environments without a general-purpose CAS; the
gp backend computes the same data from scratch with PARI/GP.  Requests
outside the table fail loudly rather than guess.
"""

import json
import sys

# h^- for Q(zeta_f), f <= 40 (f a conductor: f != 2 mod 4).  Values from
# the classical minus-class-number tables; every use is cross-checked
# against the analytic product of the primary tool by `crosscheck`.
H_MINUS = {
    3: 1, 4: 1, 5: 1, 7: 1, 8: 1, 9: 1, 11: 1, 12: 1, 13: 1, 15: 1,
    16: 1, 17: 1, 19: 1, 20: 1, 21: 1, 23: 3, 24: 1, 25: 1, 27: 1,
    28: 1, 29: 8, 31: 9, 32: 1, 33: 1, 35: 1, 36: 1, 37: 37, 39: 2, 40: 1,
}

# Minus class numbers of tabulated CM subfields, keyed by
# (conductor, subgroup_gens).  Q(sqrt(-23)) is the class-number-3
# imaginary quadratic field cut out by the residues mod 23.
SUBFIELD_H_MINUS = {
    (23, (2,)): 3,   # Q(sqrt(-23))
    (31, (9,)): 3,   # Q(sqrt(-31))
}

# Isotypic pieces of A(p) = minus class p-part for the nontrivial cases,
# keyed by (conductor, subgroup_gens, p).  A piece is a dict with the
# acting character and the exponent a (component = Z/p^a).
A_PIECES = {
    (23, (), 3): [{"kind": "legendre", "modulus": 23, "exp": 1}],
    (23, (2,), 3): [{"kind": "legendre", "modulus": 23, "exp": 1}],
    (31, (9,), 3): [{"kind": "legendre", "modulus": 31, "exp": 1}],
}

# Structure of the minus ray group A^{T0}(p) when A(p) is nontrivial,
# keyed by (conductor, subgroup_gens, p, t0).  Both entries are the
# cyclic order-9 group of the nonsplit ray extension mod (5); see the
# module docstring.
A_T0_PIECES = {
    (23, (), 3, 5): [{"kind": "legendre", "modulus": 23, "exp": 2}],
    (23, (2,), 3, 5): [{"kind": "legendre", "modulus": 23, "exp": 2}],
    # 5 splits in Q(sqrt(-31)) with trivial residue 3-part, so the ray
    # group equals the class group
    (31, (9,), 3, 5): [{"kind": "legendre", "modulus": 31, "exp": 1}],
}


def serve(request):
    task = request.get("task")
    if task != "class_pieces":
        return {"error": "unknown task %r" % (task,)}
    f = int(request["conductor"])
    gens = tuple(int(x) for x in request.get("subgroup_gens", ()))
    p = int(request["p"])
    t0 = int(request["t0"])
    if gens:
        if (f, gens) not in SUBFIELD_H_MINUS:
            return {"error": "subfield (f=%d, H=%r) is not tabulated" % (f, gens)}
        hminus = SUBFIELD_H_MINUS[(f, gens)]
    elif f not in H_MINUS:
        return {"error": "conductor %d outside the table (f <= 40)" % f}
    else:
        hminus = H_MINUS[f]
    if hminus % p:
        a_pieces = []
    else:
        key = (f, gens, p)
        if key not in A_PIECES:
            return {"error": "h^-(%d) is divisible by %d but the isotypic "
                             "structure is not tabulated" % (f, p)}
        a_pieces = A_PIECES[key]
    if not a_pieces:
        a_t0 = "derive"
    else:
        key = (f, gens, p, t0)
        if key not in A_T0_PIECES:
            return {"error": "ray-group structure for (f=%d, p=%d, t0=%d) "
                             "is not tabulated" % (f, p, t0)}
        a_t0 = A_T0_PIECES[key]
    return {
        "A_pieces": a_pieces,
        "A_T0_pieces": a_t0,
        "source": "minus-class-number table + tabulated ray resolutions",
    }


def main():
    request = json.load(sys.stdin)
    response = serve(request)
    json.dump(response, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return 1 if "error" in response else 0


if __name__ == "__main__":
    sys.exit(main())
