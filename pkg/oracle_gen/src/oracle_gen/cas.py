"""Computer-algebra backend dispatch.

Every backend is driven as a subprocess with scripted input and returns
the same structure: the isotypic pieces of A(p) and of A^{T0}(p) (or
"residue" when A(p) is trivial, meaning the ray group is canonically the
residue module's p-part).  Backends:

  table  -- `python -m oracle_gen.table_cas` (bundled; curated data)
  gp     -- PARI/GP via the script in gp_driver (requires `gp` on PATH)
"""

import json
import subprocess
import sys

from . import gp_driver
from .groupdata import is_prime


class CasError(RuntimeError):
    pass


def query_class_pieces(backend, gd, p, t0, gp_binary="gp"):
    request = {
        "task": "class_pieces",
        "conductor": gd.conductor,
        "subgroup_gens": list(gd.subgroup_gens),
        "p": p,
        "t0": t0,
    }
    if backend == "table":
        return _query_table(request)
    if backend == "gp":
        return _query_gp(request, gd, gp_binary)
    raise CasError("unknown CAS backend %r" % (backend,))


def _query_table(request):
    proc = subprocess.run(
        [sys.executable, "-m", "oracle_gen.table_cas"],
        input=json.dumps(request), capture_output=True, text=True)
    if proc.returncode or not proc.stdout.strip():
        raise CasError("table backend failed: %s" % (proc.stdout or proc.stderr).strip())
    response = json.loads(proc.stdout)
    if "error" in response:
        raise CasError(response["error"])
    return response


def _generator_primes(gd):
    """Unramified primes whose Frobenius cosets generate the Galois group,
    always including one prime in the complex-conjugation coset (the
    output reducer needs the j-action explicitly)."""
    needed = set(gd.labels)
    got = {gd.coset_of[1]}
    primes = []
    labels_chosen = set()
    q = 2
    while got != needed:
        if is_prime(q) and gd.conductor % q:
            label = gd.coset_of[q % gd.conductor]
            before = len(got)
            frontier = [label]
            while frontier:
                nxt = []
                for a in frontier:
                    for b in list(got):
                        c = gd.label_mul(a, b)
                        if c not in got:
                            got.add(c)
                            nxt.append(c)
                    if a not in got:
                        got.add(a)
                        nxt.append(a)
                frontier = nxt
            if len(got) > before:
                primes.append(q)
                labels_chosen.add(label)
        q += 1
    if gd.j_label not in labels_chosen:
        q = 2
        while True:
            if is_prime(q) and gd.conductor % q and \
                    gd.coset_of[q % gd.conductor] == gd.j_label:
                primes.append(q)
                break
            q += 1
    return primes


def _query_gp(request, gd, gp_binary):
    script = gp_driver.build_script(
        request["conductor"], request["subgroup_gens"], request["p"],
        request["t0"], _generator_primes(gd))
    try:
        proc = subprocess.run([gp_binary, "-q", "-f"], input=script,
                              capture_output=True, text=True, timeout=3600)
    except FileNotFoundError as exc:
        raise CasError("gp binary not found: %s" % exc) from exc
    if proc.returncode:
        raise CasError("gp failed: %s" % proc.stderr.strip()[:400])
    payload = gp_driver.parse_output(proc.stdout)
    return gp_driver.reduce_to_pieces(payload, gd, request["p"],
                                      _quad_modulus(gd))


def _quad_modulus(gd):
    f = gd.conductor
    # odd part or 4-part carrying the quadratic character: for prime
    # conductor this is f itself; composite cases are not yet reduced
    if is_prime(f) and f % 2:
        return f
    raise CasError("quadratic-orbit reduction only implemented for odd "
                   "prime conductors; extend reduce_to_pieces")
