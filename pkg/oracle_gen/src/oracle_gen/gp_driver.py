"""PARI/GP backend: script generation and output parsing.

The driver hands gp a self-contained script that computes the minus
(ray) class p-parts of the fixed field of H <= (Z/f)^* with their
Galois action and prints one JSON line.  Output format:

    OGEN {"cyc": [...], "ray_cyc": [...], "action": {"<a>": [[...]]},
          "ray_action": {"<a>": [[...]]}}

where cyc/ray_cyc are the p-parts of the invariant factors of the minus
class group and minus T0-ray class group, and action maps a residue
label a (a Galois generator sigma_a) to its integer matrix on the
listed cyclic generators.  The parser reduces this to the isotypic
pieces consumed by the assembler; only pieces acting through the
quadratic character are currently reducible (the same limitation as the
table backend), and anything else raises.
"""

import json

GP_TEMPLATE = r"""
default(parisize, "512M");
f = {conductor};
Hgens = {h_gens};
l0 = {t0};
pol = if(#Hgens == 0, polcyclo(f), galoissubcyclo(f, Hgens));
bnf = bnfinit(pol, 1);
gal = galoisinit(bnf.pol);
mod0 = idealhnf(bnf, 1);
foreach(idealprimedec(bnf, l0), pr, mod0 = idealmul(bnf, mod0, pr));
bnr = bnrinit(bnf, mod0, 1);
\\ Frobenius automorphisms as polynomials, labelled by rational primes
frobpol(q) = galoispermtopol(gal, idealfrobenius(bnf, gal, idealprimedec(bnf, q)[1]));
sigid(s, I) = my(te = idealtwoelt(bnf, I)); \
    idealhnf(bnf, te[1], nfgaloisapply(bnf, s, te[2]));
clmat(s) = my(g = bnf.gen); \
    Mat(vector(#g, i, bnfisprincipal(bnf, sigid(s, g[i]))[1]));
raymat(s) = bnrgaloismatrix(bnr, s);
jsonmat(m) = Str(apply(r -> Vec(r), Vec(m~)));
emitgrp(name, cyc, mats, qs) = {{
  print1("\"", name, "\": {{\"cyc\": ", Str(Vec(cyc)), ", \"action\": {{");
  for(i = 1, #qs,
    if(i > 1, print1(", "));
    print1("\"", qs[i], "\": ", jsonmat(mats[i])));
  print1("}}}}");
}};
qs = {generator_primes};
pols = vector(#qs, i, frobpol(qs[i]));
print1("OGEN {{");
emitgrp("cl", bnf.clgp.cyc, vector(#qs, i, clmat(pols[i])), qs);
print1(", ");
emitgrp("ray", bnr.cyc, vector(#qs, i, raymat(pols[i])), qs);
print("}}");
quit;
"""


def build_script(conductor, subgroup_gens, p, t0, generator_primes):
    """The gp input computing class + ray class data with Galois action.

    generator_primes: unramified rational primes whose Frobenius classes
    generate the Galois group, including one in the complex-conjugation
    coset (the reducer reads the j-action off that label).
    """
    h = "[]" if not subgroup_gens else "[" + ",".join(map(str, subgroup_gens)) + "]"
    qs = "[" + ",".join(map(str, generator_primes)) + "]"
    return GP_TEMPLATE.format(conductor=conductor, h_gens=h, t0=t0,
                              generator_primes=qs)


def parse_output(text):
    """Extract the OGEN JSON payload from a gp transcript."""
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("OGEN "):
            return json.loads(line[5:])
    raise ValueError("no OGEN payload in gp output")


def _minus_p_structure(cyc, action_of_j, p):
    """p-part invariant factors of the minus component of a module given
    by invariant factors `cyc` and the matrix of j."""
    # Desk-scale: the minus projector (1 - j)/2 acts on the p-part; we
    # only handle the cases where j acts diagonally as +-1 on each
    # cyclic factor (true whenever the p-part is isotypic for a
    # quadratic character, the only case the assembler supports).
    out = []
    for i, c in enumerate(cyc):
        cp = 1
        while c % p == 0:
            c //= p
            cp *= p
        if cp == 1:
            continue
        diag = action_of_j[i][i] % cp if action_of_j else 1
        off_diag = any(action_of_j[i][k] % cp for k in range(len(cyc)) if k != i) \
            if action_of_j else False
        if off_diag:
            raise ValueError("non-diagonal j-action on the p-part: "
                             "unsupported by the quadratic-orbit assembler")
        if diag == cp - 1:
            out.append(cp)
    return out


def reduce_to_pieces(payload, gd, p, quad_modulus):
    """Turn the gp payload into assembler pieces (quadratic orbits only).

    gd: groupdata.GroupData; quad_modulus: the conductor of the odd
    quadratic character the pieces are expected to act through.  Raises
    if the action is anything else: extend the assembler first.
    """
    from .groupdata import legendre_character
    chi = legendre_character(quad_modulus)
    pieces = {"A_pieces": [], "A_T0_pieces": []}
    for name, slot in (("cl", "A_pieces"), ("ray", "A_T0_pieces")):
        data = payload[name]
        cyc = [int(c) for c in data["cyc"]]
        action = {int(a): m for a, m in data["action"].items()}
        j_mat = None
        for a, mat in action.items():
            if gd.coset_of[a % gd.conductor] == gd.j_label:
                j_mat = mat
        minus = _minus_p_structure(cyc, j_mat, p)
        for cp in minus:
            # verify the action really is the quadratic character
            for a, mat in action.items():
                if mat and (mat[0][0] % cp) != (chi(a) % cp):
                    raise ValueError("p-part action is not the expected "
                                     "quadratic character")
            exp = 0
            while cp > 1:
                cp //= p
                exp += 1
            pieces[slot].append({"kind": "legendre", "modulus": quad_modulus,
                                 "exp": exp})
    if not pieces["A_pieces"]:
        pieces["A_T0_pieces"] = "residue"
    return pieces
