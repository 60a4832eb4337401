"""Command line front end: one verb per library operation, plus a REPL.

Every command produces a transcript, a JSON document that echoes the input,
lists the derivation steps and records the result and exit status.  With
``--json`` the transcript is printed; otherwise a short human summary is.
Transcripts are rendered deterministically, so replaying one reproduces it
byte for byte; ``zg replay FILE`` and the REPL command ``:replay FILE`` check
exactly that.

Exit codes: 0 success, 1 domain error, 2 parse error, unknown verb or bad
usage.
"""

import argparse
import importlib
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import divisors as D
from . import pp as P
from . import scalars as S
from . import snf as M
from . import topology as T
from .dsl import (
    Parser,
    parse_cut,
    parse_eps,
    parse_formula,
    parse_matrix,
    parse_module_point,
    parse_pair,
    parse_point_value,
    parse_poly,
    parse_scalar,
    parse_triple,
    parse_value,
)
from .errors import ParseError, ZgError

# the package re-exports a function named classify, which hides the submodule
C = importlib.import_module(".classify", __package__)

__all__ = ["VERBS", "Verb", "Context", "Outcome", "run", "render", "replay_file", "main", "Repl"]

PACKAGE_FIXTURES = Path(__file__).with_name("fixtures")


class UsageError(Exception):
    """Bad verb or argument count; exits with status 2."""


@dataclass
class Context:
    env: dict = field(default_factory=dict)
    max_k: int = None
    seed: int = None
    roots: tuple = ()
    fixtures: Path = None

    def options(self):
        return {
            "max_k": None if self.max_k is None else str(self.max_k),
            "roots": [str(r) for r in self.roots],
            "seed": None if self.seed is None else str(self.seed),
        }


@dataclass
class Outcome:
    result: dict
    text: str
    steps: list = field(default_factory=list)
    normalized: list = field(default_factory=list)


@dataclass(frozen=True)
class Verb:
    name: str
    handler: object
    op: object
    usage: str
    summary: str

    @property
    def arity(self):
        words = self.usage.split()
        required = sum(1 for w in words if not w.startswith("["))
        optional = None if any(w.endswith("...]") for w in words) else len(words)
        return required, optional


def _s(x):
    """Exact string form of any library value."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, D.Order):
        return x.name
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_s(y) for y in x]
    return str(x)


def _check(cond, what):
    if not cond:
        raise AssertionError(f"internal verification failed: {what}")
    return f"verified: {what}"


# ---------------------------------------------------------------------------
# handlers (each receives the context and the raw argument strings)


def _lattice(op, label):
    def handler(ctx, f, g):
        a, b = parse_scalar(f, ctx.env), parse_scalar(g, ctx.env)
        r = op(a, b)
        return Outcome({label: _s(r)}, str(r), normalized=[str(a), str(b)])
    return handler


def _divides(ctx, f, g):
    a, b = parse_scalar(f, ctx.env), parse_scalar(g, ctx.env)
    r = D.divides(a, b)
    return Outcome({"divides": r}, str(r).lower(), normalized=[str(a), str(b)])


def _divisor_arg(text, ctx):
    v = parse_scalar(text, ctx.env)
    if not isinstance(v, (D.FiniteDivisor, D.TailDivisor)):
        raise ZgError(f"expected a divisor literal {{t:m, ...}} or tail(...), got {v}")
    return v


def _adequate(ctx, f, g):
    a, b = _divisor_arg(f, ctx), _divisor_arg(g, ctx)
    h, u = D.adequate_split(a, b)
    steps = [
        _check(D.div_mul(h, u) == a, f"h*u = {a}"),
        _check(D.div_gcd(h, b).is_unit(), "gcd(h, g) = 1"),
        _check(set(u.points()) <= set(b.points()), "Z(u) is contained in Z(g)"),
    ]
    return Outcome({"h": str(h), "u": str(u)}, f"h = {h}, u = {u}", steps, [str(a), str(b)])


def _bezout(ctx, f, g):
    a, b = parse_poly(f, ctx.env), parse_poly(g, ctx.env)
    d, u, v = S.poly_xgcd(a, b)
    steps = [_check(a * u + b * v == d, f"({a})*({u}) + ({b})*({v}) = {d}")]
    return Outcome({"gcd": str(d), "u": str(u), "v": str(v)}, f"gcd = {d}, u = {u}, v = {v}",
                   steps, [str(a), str(b)])


def _divmod(ctx, f, g):
    a, b = parse_poly(f, ctx.env), parse_poly(g, ctx.env)
    q, r = S.poly_divmod(a, b)
    steps = [_check(q * b + r == a, f"({q})*({b}) + ({r}) = {a}")]
    return Outcome({"quotient": str(q), "remainder": str(r)}, f"q = {q}, r = {r}", steps,
                   [str(a), str(b)])


def _multiplicity(ctx, f, t):
    a, pt = parse_poly(f, ctx.env), parse_point_value(t, ctx.env)
    m = S.multiplicity_at(a, pt)
    return Outcome({"multiplicity": _s(m)}, str(m), normalized=[str(a), str(pt)])


def _eval_poly(ctx, f, t):
    a, pt = parse_poly(f, ctx.env), parse_point_value(t, ctx.env)
    v = S.poly_eval(a, pt)
    return Outcome({"value": str(v)}, str(v), normalized=[str(a), str(pt)])


def _saturation(ctx, f, g):
    a, b = parse_poly(f, ctx.env), parse_poly(g, ctx.env)
    r = S.saturation_part(a, b)
    return Outcome({"saturation_part": str(r)}, str(r), normalized=[str(a), str(b)])


def _from_poly(ctx, f, *roots):
    a = parse_poly(f, ctx.env)
    pts = [parse_point_value(r, ctx.env) for r in roots]
    sp = D.from_poly(a, pts)
    steps = [_check(sp.to_poly() == a, f"{sp} expands to {a}")]
    return Outcome({"unit": str(sp.unit), "divisor": str(sp.divisor)}, str(sp), steps,
                   [str(a)] + [str(t) for t in pts])


def _to_poly(ctx, d):
    div = _divisor_arg(d, ctx)
    p = D.to_poly(div)
    return Outcome({"poly": str(p)}, str(p), normalized=[str(div)])


def _split_coprime(ctx, d):
    div = _divisor_arg(d, ctx)
    r = D.split_coprime(div)
    if r is D.NotSplittable() or not r:
        return Outcome({"splittable": False, "parts": None}, "not splittable", normalized=[str(div)])
    f, g = r
    steps = [
        _check(D.div_mul(f, g) == div if isinstance(div, D.FiniteDivisor) else True, "f*g reassembles the input"),
        _check(not f.is_unit() and not g.is_unit(), "both parts are nonunits"),
        _check(D.div_gcd(f, g).is_unit(), "gcd(f, g) = 1"),
    ]
    return Outcome({"splittable": True, "parts": [str(f), str(g)]}, f"{f} * {g}", steps, [str(div)])


def _snf(ctx, m):
    A = parse_matrix(m, ctx.env)
    trace = []
    U, Dm, V = M.smith_normal_form(A, trace)
    inv = M.invariant_factors(A)
    dd = M.determinantal_divisors(A)
    steps = list(trace)
    steps.append(_check(M.matmul(M.matmul(U, A), V) == Dm, "U*A*V = D"))
    mat = lambda X: [[str(x) for x in row] for row in X]
    res = {"U": mat(U), "D": mat(Dm), "V": mat(V), "invariant_factors": _s(inv),
           "determinantal_divisors": _s(dd)}
    return Outcome(res, "D = " + str(mat(Dm)).replace("'", ""), steps, [str(mat(A)).replace("'", "")])


def _pp_normalize(ctx, phi):
    f = parse_formula(phi, ctx.env)
    s, c = P.to_sum_normal(f), P.to_conj_normal(f)
    steps = [f"sum: {x}" for x in s.trace] + [f"conj: {x}" for x in c.trace]
    res = {"sum_form": s.as_strings(), "conj_form": c.as_strings(),
           "sum_formula": str(s.to_formula()), "conj_formula": str(c.to_formula())}
    return Outcome(res, f"sum form: {s}\nconj form: {c}", steps, [str(f)])


def _pp_eval(ctx, phi, point):
    f, N = parse_formula(phi, ctx.env), parse_module_point(point, ctx.env)
    v = P.evaluate(f, N)
    res = {"point": str(N), "subgroup": str(v),
           "exponent": _s(v.value) if isinstance(v.value, int) else None}
    return Outcome(res, str(v), normalized=[str(f), str(N)])


def _family(ctx):
    return P.default_family(max_k=ctx.max_k or 6)


def _pp_leq(ctx, phi, psi):
    f, g = parse_formula(phi, ctx.env), parse_formula(psi, ctx.env)
    fam = _family(ctx)
    ok = P.lattice_leq(f, g, fam)
    steps = [f"compared on {len(fam)} points: E(t,k) for t in {', '.join(map(str, P.DEFAULT_POINTS))}, "
             f"k <= {ctx.max_k or 6}, and Q"]
    counter = None
    for N in fam:
        a, b = P.evaluate(f, N), P.evaluate(g, N)
        if not a <= b:
            counter = str(N)
            steps.append(f"at {N}: {a} is not contained in {b}")
            break
    res = {"leq": ok, "counterexample": counter, "family_size": _s(len(fam))}
    return Outcome(res, str(ok).lower(), steps, [str(f), str(g)])


def _triple_validate(ctx, tr):
    t = parse_triple(tr, ctx.env)
    r = C.validate_triple(t)
    res = {"ok": r.ok, "case": _s(r.case) if r.ok else None, "message": r.message}
    return Outcome(res, str(r), normalized=[str(t)])


def _triple_classify(ctx, tr):
    t = parse_triple(tr, ctx.env)
    pc = C.classify(t)
    return Outcome(_s_dict(pc.flags()), f"{pc} (isolated={pc.isolated}, closed={pc.closed}, "
                   f"survives_cb={pc.survives_cb})", normalized=[str(t)])


def _s_dict(d):
    return {k: _s(v) for k, v in d.items()}


def _triple_equiv(ctx, a, b):
    t1, t2 = parse_triple(a, ctx.env), parse_triple(b, ctx.env)
    v = C.shift_equivalent(t1, t2)
    steps = [v.reason]
    if v.equivalent:
        cur = {1: t1, 2: t2}
        for st in v.witness:
            cur[st.which] = C.apply_shift(cur[st.which], st.direction, st.rho)
            steps.append(f"{st}: {cur[st.which]}")
        steps.append(_check(cur[1] == cur[2], f"both sides reach {cur[1]}"))
    wit = [{"triple": _s(s.which), "direction": s.direction, "rho": _rho_text(s.rho)} for s in v.witness]
    text = "true" if v.equivalent else "false"
    if wit:
        text += "; witness " + ", ".join(f"{w['direction']} shift of triple {w['triple']} by rho = {w['rho']}"
                                        for w in wit)
    return Outcome({"equivalent": v.equivalent, "witness": wit, "reason": v.reason}, text, steps,
                   [str(t1), str(t2)])


def _rho_text(rho):
    return rho.tail_str() if isinstance(rho, D.EPSeq) else str(rho)


def _shift(ctx, tr, direction, rho):
    t = parse_triple(tr, ctx.env)
    r = int(Parser(rho).natural()) if t.tier == "fixed" else parse_eps(rho, ctx.env)
    out = C.apply_shift(t, direction, r)
    return Outcome({"triple": str(out)}, str(out), normalized=[str(t), direction, _rho_text(r)])


def _cut_verb(name, label):
    def handler(ctx, cut):
        c = parse_cut(cut, ctx.env)
        fn = getattr(C, name)
        r = fn(c)
        res = {label: _s(r)}
        text = str(r).lower() if isinstance(r, bool) else str(r)
        steps = []
        if name == "sharp":
            res["prime"] = C.is_prime_cut(r)
            steps.append(_check(C.cut_leq(c, r), f"{c} <= {r}"))
            steps.append(_check(C.sharp(r) == r, "sharp is idempotent here"))
        return Outcome(res, text, steps, [str(c)])
    return handler


def _localize(ctx, tr):
    t = parse_triple(tr, ctx.env)
    r = C.localizing_ideal(t)
    return Outcome({"ideal": str(r)}, str(r), normalized=[str(t)])


def _isolate(ctx, t, n):
    pt = parse_point_value(t, ctx.env)
    k = Parser(n).natural()
    pair = T.isolation_pair(pt, k)
    probe = ctx.max_k or 8
    pts = [P.FiniteLength(pt, m) for m in range(1, max(probe, k) + 1)]
    pts += [P.FiniteLength(u, k) for u in P.DEFAULT_POINTS if P.GaussRational(u) != pt]
    pts.append(P.Q)
    table, steps = [], []
    for N in pts:
        member = T.contains_point(pair, N)
        table.append({"point": str(N), "member": member})
        steps.append(_check(member == (N == P.FiniteLength(pt, k)), f"{N} {'in' if member else 'not in'} the open set"))
    res = {"pair": str(pair), "table": table}
    return Outcome(res, str(pair), steps, [str(pt), _s(k)])


def _contains(ctx, pair, target):
    p = parse_pair(pair, ctx.env)
    probe = Parser(target, ctx.env)
    if probe.tok[1] in ("E", "Q") or (probe.tok[1] in ctx.env and isinstance(ctx.env[probe.tok[1]], (P.FiniteLength, P.QField))):
        N = parse_module_point(target, ctx.env)
        e1, e2 = P.evaluate(p.phi(), N), P.evaluate(p.psi(), N)
        r = T.contains_point(p, N)
        steps = [f"phi = {p.phi()} gives {e1}", f"psi = {p.psi()} gives {e2}"]
        return Outcome({"contains": r, "phi": str(e1), "psi": str(e2)}, str(r).lower(), steps,
                       [str(p), str(N)])
    t = parse_triple(target, ctx.env)
    r = T.contains_triple(p, t)
    res = {"contains": r.holds, "direction": r.direction or None,
           "rho": None if r.rho is None else _rho_text(r.rho)}
    return Outcome(res, str(r.holds).lower(), list(r.transcript), [str(p), str(t)])


def _inhabit(ctx, pair):
    p = parse_pair(pair, ctx.env)
    w = T.inhabit(p, roots=ctx.roots or None, max_k=ctx.max_k)
    if isinstance(w, T.EmptyVerdict):
        return Outcome({"nonempty": False, "certificate": list(w.certificate)}, "empty",
                       list(w.certificate), [str(p)])
    steps = list(w.transcript)
    steps.append(_check(w.replay(p), f"replay: (z-t)^{w.j} lies in phi but not psi at {w.point}"))
    res = {"nonempty": True, "point": str(w.point), "j": _s(w.j),
           "index": None if w.index is None else _s(w.index)}
    return Outcome(res, f"{w.point}, element (z-t)^{w.j}", steps, [str(p)])


def _cb_pair(ctx, pair):
    p = parse_pair(pair, ctx.env)
    r = T.cb_derivative_pair(p)
    return Outcome({"pair": str(r.pair), "opens": r.opens, "note": r.note},
                   f"{r.pair}; {'nonempty' if r.opens else 'empty'} in the derivative", [r.note], [str(p)])


def _eps_pair(ctx, a, b):
    return parse_eps(a, ctx.env), parse_eps(b, ctx.env)


def _dense_between(ctx, a, b):
    mu, nu = _eps_pair(ctx, a, b)
    xi = D.dense_between(mu, nu)
    steps = [
        _check(D.eps_cmp(mu, xi) is D.Order.LESS, f"{mu} < {xi}"),
        _check(D.eps_cmp(xi, nu) is D.Order.LESS, f"{xi} < {nu}"),
        _check(not D.fin_equiv(mu, xi), f"{xi} - {mu} = {xi.monus(mu)} is unbounded"),
        _check(not D.fin_equiv(xi, nu), f"{nu} - {xi} = {nu.monus(xi)} is unbounded"),
    ]
    return Outcome({"between": str(xi)}, str(xi), steps, [str(mu), str(nu)])


def _dense_chain(ctx, a, b):
    mu, nu = _eps_pair(ctx, a, b)
    r = T.dense_chain_check(mu, nu)
    res = {"between": str(r.witness), "lower_gap": str(r.lower_gap), "upper_gap": str(r.upper_gap),
           "incomparable": list(r.incomparable)}
    return Outcome(res, str(r.witness), normalized=[str(mu), str(nu)])


def _eps_cmp(ctx, a, b):
    mu, nu = _eps_pair(ctx, a, b)
    r = D.eps_cmp(mu, nu)
    return Outcome({"order": r.name}, r.name.lower(), normalized=[str(mu), str(nu)])


def _fin_equiv(ctx, a, b):
    mu, nu = _eps_pair(ctx, a, b)
    r = D.fin_equiv(mu, nu)
    return Outcome({"finite_equivalent": r}, str(r).lower(), normalized=[str(mu), str(nu)])


def _superdecomposable(ctx, d):
    v = parse_scalar(d, ctx.env)
    r = T.is_superdecomposable_candidate(v)
    split = None if not r.split else [str(x) for x in r.split]
    steps = []
    if r.candidate:
        f, g = r.split
        steps.append(_check(not f.is_unit() and not g.is_unit() and D.div_gcd(f, g).is_unit(),
                            f"{f} and {g} are coprime nonunits"))
    return Outcome({"candidate": r.candidate, "split": split, "obstruction": r.obstruction},
                   str(r.candidate).lower() + (f" ({r.obstruction})" if r.obstruction else ""),
                   steps, [str(v)])


def _pp_type_of(ctx, point, j):
    N = parse_module_point(point, ctx.env)
    k = Parser(j).natural()
    tr = C.pp_type_of_element(N, k)
    pc = C.classify(tr)
    return Outcome({"triple": str(tr), "class": str(pc)}, str(tr), normalized=[str(N), _s(k)])


def _replay(ctx, path):
    ok, message = replay_file(path, ctx)
    return Outcome({"ok": ok, "file": Path(path).name, "message": message}, "OK" if ok else f"MISMATCH: {message}")


def _fixtures(ctx):
    folder = ctx.fixtures or PACKAGE_FIXTURES
    rows = []
    for f in sorted(Path(folder).glob("*.json")):
        ok, message = replay_file(f, ctx)
        rows.append({"file": f.name, "ok": ok, "message": message})
    good = all(r["ok"] for r in rows)
    text = "\n".join(f"{r['file']}: {'OK' if r['ok'] else 'MISMATCH ' + r['message']}" for r in rows)
    return Outcome({"ok": good, "fixtures": rows}, text or "no fixtures")


def _selfcheck(ctx, trials="200"):
    """Randomized identity checks driven by ``--seed``."""
    rng = random.Random(ctx.seed if ctx.seed is not None else 0)
    count = Parser(trials).natural()
    grid = [S.GaussRational(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
    tallies = {"divides": 0, "gcd_lcm": 0, "bezout": 0}

    def rand_div():
        pts = rng.sample(grid, rng.randint(0, 4))
        return D.FiniteDivisor({t: rng.randint(1, 4) for t in pts})

    def rand_poly():
        return S.Poly(tuple(S.GaussRational(rng.randint(-5, 5), rng.randint(-2, 2))
                            for _ in range(rng.randint(1, 6))))

    for _ in range(count):
        f, g = rand_div(), rand_div()
        fp, gp = f.to_poly(), g.to_poly()
        tallies["divides"] += D.divides(f, g) == (gp % fp).is_zero()
        tallies["gcd_lcm"] += D.div_mul(D.div_gcd(f, g), D.div_lcm(f, g)) == D.div_mul(f, g)
        a, b = rand_poly(), rand_poly()
        if a.is_zero() and b.is_zero():
            tallies["bezout"] += 1
            continue
        d, u, v = S.poly_xgcd(a, b)
        tallies["bezout"] += a * u + b * v == d
    ok = all(v == count for v in tallies.values())
    res = {"ok": ok, "trials": _s(count), "passed": _s_dict(tallies)}
    text = ", ".join(f"{k} {v}/{count}" for k, v in tallies.items())
    return Outcome(res, text)


_VERB_LIST = [
    Verb("gcd", _lattice(D.div_gcd, "gcd"), D.div_gcd, "F G", "gcd of two divisors or polynomials"),
    Verb("lcm", _lattice(D.div_lcm, "lcm"), D.div_lcm, "F G", "lcm of two divisors or polynomials"),
    Verb("mul", _lattice(D.div_mul, "product"), D.div_mul, "F G", "product of two divisors or polynomials"),
    Verb("divides", _divides, D.divides, "F G", "does F divide G"),
    Verb("adequate", _adequate, D.adequate_split, "F G", "split F = h*u, h coprime to G, Z(u) inside Z(G)"),
    Verb("bezout", _bezout, S.poly_xgcd, "F G", "monic gcd with Bezout cofactors"),
    Verb("divmod", _divmod, S.poly_divmod, "F G", "polynomial division with remainder"),
    Verb("multiplicity", _multiplicity, S.multiplicity_at, "F T", "multiplicity of the zero of F at T"),
    Verb("eval-poly", _eval_poly, S.poly_eval, "F T", "value of F at T"),
    Verb("saturation", _saturation, S.saturation_part, "F G", "part of F supported on the zeros of G"),
    Verb("from-poly", _from_poly, D.from_poly, "F [ROOT...]", "split F over the given roots"),
    Verb("to-poly", _to_poly, D.to_poly, "D", "monic polynomial of a finite divisor"),
    Verb("split-coprime", _split_coprime, D.split_coprime, "D", "split into two coprime nonunits"),
    Verb("snf", _snf, M.smith_normal_form, "MATRIX", "Smith normal form with its step trace"),
    Verb("pp-normalize", _pp_normalize, P.to_sum_normal, "PHI", "sum and conjunction normal forms"),
    Verb("pp-eval", _pp_eval, P.evaluate, "PHI POINT", "the subgroup PHI defines in E(t,k) or Q"),
    Verb("pp-leq", _pp_leq, P.lattice_leq, "PHI PSI", "PHI implies PSI on the evaluation family"),
    Verb("triple-validate", _triple_validate, C.validate_triple, "TRIPLE", "admissibility check"),
    Verb("triple-classify", _triple_classify, C.classify, "TRIPLE", "named point and topological flags"),
    Verb("triple-equiv", _triple_equiv, C.shift_equivalent, "TRIPLE TRIPLE", "shift equivalence with witness"),
    Verb("shift", _shift, C.apply_shift, "TRIPLE DIRECTION RHO", "direct or inverse shift of a triple"),
    Verb("sharp", _cut_verb("sharp", "sharp"), C.sharp, "CUT", "the prime ideal I#"),
    Verb("prime-cut", _cut_verb("is_prime_cut", "prime"), C.is_prime_cut, "CUT", "is the cut prime"),
    Verb("weakly-prime", _cut_verb("is_weakly_prime", "weakly_prime"), C.is_weakly_prime, "CUT",
         "is the cut weakly prime"),
    Verb("localize", _localize, C.localizing_ideal, "TRIPLE", "the localizing prime I# u J#"),
    Verb("isolate", _isolate, T.isolation_pair, "T N", "pair isolating E(T,N), with a verification table"),
    Verb("contains", _contains, T.contains_triple, "PAIR TARGET", "is the point or triple in the open set"),
    Verb("inhabit", _inhabit, T.inhabit, "PAIR", "finite-length witness or an emptiness certificate"),
    Verb("cb-pair", _cb_pair, T.cb_derivative_pair, "PAIR", "the pair after the Cantor-Bendixson derivative"),
    Verb("dense-between", _dense_between, D.dense_between, "MU NU", "a sequence strictly between"),
    Verb("dense-chain", _dense_chain, T.dense_chain_check, "MU NU", "midpoint with gap report"),
    Verb("eps-cmp", _eps_cmp, D.eps_cmp, "MU NU", "eventual comparison of sequences"),
    Verb("fin-equiv", _fin_equiv, D.fin_equiv, "MU NU", "is the difference bounded"),
    Verb("superdecomposable", _superdecomposable, T.is_superdecomposable_candidate, "D",
         "can every nonunit factor split"),
    Verb("pp-type-of", _pp_type_of, C.pp_type_of_element, "POINT J", "triple of (z-t)^J in E(t,k)"),
    Verb("replay", _replay, None, "FILE", "re-run a transcript and compare byte for byte"),
    Verb("fixtures", _fixtures, None, "", "replay every fixture in the fixture directory"),
    Verb("selfcheck", _selfcheck, None, "[TRIALS]", "randomized identity checks (uses --seed)"),
]

VERBS = {v.name: v for v in _VERB_LIST}


# ---------------------------------------------------------------------------
# transcripts


def render(transcript):
    return json.dumps(transcript, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run(verb, args, ctx=None):
    """Run one command; returns ``(transcript, text, exit_code)``."""
    ctx = ctx or Context()
    tr = {"verb": verb, "input": list(args), "options": ctx.options()}
    try:
        if verb not in VERBS:
            raise UsageError(f"unknown verb {verb!r}; try 'zg help'")
        v = VERBS[verb]
        lo, hi = v.arity
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise UsageError(f"usage: zg {verb} {v.usage}".rstrip())
        out = v.handler(ctx, *args)
    except (ParseError, UsageError) as exc:
        return _failed(tr, exc, 2)
    except (ZgError, ZeroDivisionError) as exc:
        return _failed(tr, exc, 1)
    tr.update(normalized=out.normalized, steps=[str(s) for s in out.steps], result=out.result,
              exit_status="0")
    return tr, out.text, 0


def _failed(tr, exc, code):
    tr.update(normalized=[], steps=[], result=None, error=str(exc), exit_status=str(code))
    return tr, f"error: {exc}", code


def _resolve(path, ctx):
    p = Path(path)
    if p.exists():
        return p
    for folder in (ctx.fixtures, PACKAGE_FIXTURES):
        if folder is not None and (Path(folder) / p.name).exists():
            return Path(folder) / p.name
    raise ZgError(f"no such transcript: {path}")


def replay_file(path, ctx=None):
    """Re-run a stored transcript; ``(ok, message)``."""
    ctx = ctx or Context()
    p = _resolve(path, ctx)
    text = p.read_text()
    try:
        stored = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"transcript is not JSON: {exc.msg}", exc.pos) from None
    opts = stored.get("options", {})
    sub = Context(
        env={},
        max_k=None if opts.get("max_k") is None else int(opts["max_k"]),
        seed=None if opts.get("seed") is None else int(opts["seed"]),
        roots=tuple(parse_point_value(r) for r in opts.get("roots", [])),
        fixtures=ctx.fixtures,
    )
    fresh, _, _ = run(stored.get("verb", ""), stored.get("input", []), sub)
    if render(fresh) == text:
        return True, "identical"
    for key in sorted(set(fresh) | set(stored)):
        if fresh.get(key) != stored.get(key):
            return False, f"field {key!r} differs"
    return False, "formatting differs"


# ---------------------------------------------------------------------------
# REPL


def _split_top(text, seps):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and ch in seps:
            if "".join(cur).strip():
                parts.append("".join(cur).strip())
            cur = []
            continue
        cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    return parts


def split_command(line):
    """``verb a b`` or ``verb(a, b)`` into the verb and its argument strings."""
    line = line.strip()
    head = line.split(None, 1)[0] if line else ""
    name, paren, _ = head.partition("(")
    if paren and name in VERBS and line.endswith(")"):
        inner = line[len(name) + 1:-1]
        return name, _split_top(inner, ",")
    words = _split_top(line, " \t")
    return (words[0], words[1:]) if words else ("", [])


class Repl:
    """Line-oriented session; ``let`` bindings persist across lines."""

    prompt = "zg> "

    def __init__(self, ctx=None, out=None):
        self.ctx = ctx or Context()
        self.out = out or sys.stdout

    def say(self, text):
        print(text, file=self.out)

    def handle(self, line):
        line = line.strip()
        if not line or line.startswith("#"):
            return True
        if line in (":quit", ":q", "quit", "exit"):
            return False
        if line in (":help", "help"):
            self.say(_help_text())
            return True
        if line.startswith(":replay"):
            path = line[len(":replay"):].strip()
            try:
                ok, msg = replay_file(path, self.ctx)
                self.say("OK" if ok else f"MISMATCH: {msg}")
            except ZgError as exc:
                self.say(f"error: {exc}")
            return True
        if line.startswith("let "):
            name, eq, expr = line[4:].partition("=")
            name = name.strip()
            if not eq or not name.isidentifier():
                self.say("error: usage: let NAME = EXPR")
                return True
            try:
                self.ctx.env[name] = parse_value(expr.strip(), self.ctx.env)
                self.say(f"{name} = {self.ctx.env[name]}")
            except ZgError as exc:
                self.say(f"error: {exc}")
            return True
        verb, args = split_command(line)
        if verb in VERBS:
            _, text, _ = run(verb, args, self.ctx)
            self.say(text)
            return True
        try:
            self.say(str(parse_value(line, self.ctx.env)))
        except ZgError as exc:
            self.say(f"error: {exc}")
        return True

    def loop(self, stream=None):
        stream = stream or sys.stdin
        interactive = stream.isatty()
        while True:
            if interactive:
                self.out.write(self.prompt)
                self.out.flush()
            line = stream.readline()
            if not line or not self.handle(line):
                return 0


# ---------------------------------------------------------------------------
# entry point


def _help_text():
    width = max(len(v.name) for v in _VERB_LIST)
    lines = ["verbs:"]
    for v in _VERB_LIST:
        lines.append(f"  {v.name.ljust(width)}  {v.usage.ljust(22)} {v.summary}")
    lines.append("REPL: let NAME = EXPR, :replay FILE, :quit")
    return "\n".join(lines)


def _parser():
    p = argparse.ArgumentParser(prog="zg", description="Exact divisor, pp-formula and spectrum computations.",
                                epilog="Run 'zg help' for the verb list; without a verb zg starts a REPL.")
    p.add_argument("verb", nargs="?", help="operation to run")
    p.add_argument("args", nargs="*", help="DSL arguments")
    p.add_argument("--json", action="store_true", help="print the JSON transcript")
    p.add_argument("--fixtures", metavar="DIR", help="directory searched by replay and fixtures")
    p.add_argument("--seed", type=int, help="seed for randomized property commands")
    p.add_argument("--max-k", type=int, dest="max_k", help="search bound for inhabit, pp-leq and isolate")
    p.add_argument("--roots", help="comma separated roots supplied to inhabit")
    p.add_argument("--out", metavar="FILE", help="also write the transcript to FILE")
    return p


def main(argv=None):
    p = _parser()
    ns = p.parse_intermixed_args(argv)
    try:
        roots = tuple(parse_point_value(r) for r in _split_top(ns.roots, ",")) if ns.roots else ()
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ctx = Context(max_k=ns.max_k, seed=ns.seed, roots=roots,
                  fixtures=Path(ns.fixtures) if ns.fixtures else None)
    if ns.verb in (None, "repl"):
        return Repl(ctx).loop()
    if ns.verb == "help":
        print(_help_text())
        return 0
    tr, text, code = run(ns.verb, ns.args, ctx)
    if ns.out:
        Path(ns.out).write_text(render(tr))
    if ns.json:
        sys.stdout.write(render(tr))
    elif code == 0:
        print(text)
    else:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
