#!/usr/bin/env python3
"""Regenerates the bundled corpus/*.ua files.

Tables are computed here from their textbook definitions, independently of
the C++ library, so the corpus doubles as an oracle for it.
"""

import itertools
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def table(f, n, arity):
    if arity == 0:
        return str(f())

    def go(prefix):
        if len(prefix) == arity:
            return str(f(*prefix))
        return "[" + ",".join(go(prefix + (a,)) for a in range(n)) + "]"

    return go(())


def algebra(name, theory, n, ops):
    """ops: list of (symbol, arity, function)."""
    body = " ".join(f"{s} = {table(f, n, k)};" for s, k, f in ops)
    sep = " " if body else ""
    return f"algebra {name} : {theory} {{ carrier = {n};{sep}{body} }}\n"


def group(name, n, mul, e, inv):
    return algebra(name, "Grp", n, [("e", 0, lambda: e), ("inv", 1, inv), ("mul", 2, mul)])


def hom(name, dom, cod, values):
    return f"hom {name} : {dom} -> {cod} = [{','.join(map(str, values))}];\n"


def topology(name, on, opens):
    body = "".join(f" open {{{','.join(map(str, sorted(u)))}}};" for u in opens)
    return f"topology {name} on {on} {{{body} }}\n"


# (a, b) in Z3 x| Z2 with the inversion action, encoded a * 2 + b.
def s3_mul(x, y):
    a, b = divmod(x, 2)
    c, d = divmod(y, 2)
    return ((a + (c if b == 0 else -c)) % 3) * 2 + (b + d) % 2


def s3_inv(x):
    return next(y for y in range(6) if s3_mul(x, y) == 0)


# A non-associative loop of order 5 with identity 0 (a Latin square).
L5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def l5_sub(x, y):
    # right division: the unique z with z + y = x
    return next(z for z in range(5) if L5[z][y] == x)


def check_l5():
    for row in L5:
        assert sorted(row) == list(range(5))
    for col in zip(*L5):
        assert sorted(col) == list(range(5))
    assert any(L5[L5[a][b]][c] != L5[a][L5[b][c]] for a, b, c in itertools.product(range(5), repeat=3))


THEORIES = """\
# Groups in the notation e, inv, mul.
theory Grp {
  op e/0;
  op inv/1;
  op mul/2;
  axiom mul(x, mul(y, z)) = mul(mul(x, y), z);
  axiom mul(x, e) = x;
  axiom mul(e, x) = x;
  axiom mul(x, inv(x)) = e;
  axiom mul(inv(x), x) = e;
}

theory Mon {
  op e/0;
  op mul/2;
  axiom mul(x, mul(y, z)) = mul(mul(x, y), z);
  axiom mul(x, e) = x;
  axiom mul(e, x) = x;
}

# Pointed sets with a binary plus and a right division.
theory Loop {
  op zero/0;
  op add/2;
  op sub/2;
  axiom add(x, zero) = x;
  axiom add(zero, x) = x;
  axiom sub(add(x, y), y) = x;
  axiom add(sub(x, y), y) = x;
}

# Bare sets, the carriers of plain spaces.
theory Set { }
"""


def groups():
    out = ["# Small groups. S3 is Z3 x| Z2 with (a, b) at a * 2 + b.\n"]
    for n in range(1, 9):
        out.append(group(f"Z{n}", n, lambda a, b, n=n: (a + b) % n, 0, lambda a, n=n: (-a) % n))
    out.append(group("Klein", 4, lambda a, b: a ^ b, 0, lambda a: a))
    out.append(group("S3", 6, s3_mul, 0, s3_inv))
    out.append(group("Z3xZ2", 6, lambda x, y: ((x // 2 + y // 2) % 3) * 2 + (x + y) % 2, 0,
                     lambda x: ((-(x // 2)) % 3) * 2 + x % 2))
    out.append("\n# The maximum monoid on {0, 1}.\n")
    out.append(algebra("M2", "Mon", 2, [("e", 0, lambda: 0), ("mul", 2, max)]))
    out.append("\n# A non-associative loop and its square, (a, b) at a * 5 + b.\n")
    out.append(algebra("L5", "Loop", 5, [("zero", 0, lambda: 0),
                                        ("add", 2, lambda a, b: L5[a][b]),
                                        ("sub", 2, l5_sub)]))

    def sq(f):
        return lambda x, y: f(x // 5, y // 5) * 5 + f(x % 5, y % 5)

    out.append(algebra("L5xL5", "Loop", 25, [("zero", 0, lambda: 0),
                                             ("add", 2, sq(lambda a, b: L5[a][b])),
                                             ("sub", 2, sq(l5_sub))]))
    return "".join(out)


def maps():
    out = ["# Homomorphisms.\n"]
    out.append(hom("Z4_mod2", "Z4", "Z2", [x % 2 for x in range(4)]))
    out.append(hom("Z6_mod2", "Z6", "Z2", [x % 2 for x in range(6)]))
    out.append(hom("Z6_mod3", "Z6", "Z3", [x % 3 for x in range(6)]))
    out.append(hom("Z8_mod4", "Z8", "Z4", [x % 4 for x in range(8)]))
    out.append(hom("Z8_mod2", "Z8", "Z2", [x % 2 for x in range(8)]))
    out.append(hom("Z2_double", "Z2", "Z4", [0, 2]))
    out.append(hom("Z4_double", "Z4", "Z4", [(2 * x) % 4 for x in range(4)]))
    out.append(hom("Z3_into_S3", "Z3", "S3", [a * 2 for a in range(3)]))
    out.append(hom("Z3_to_Z1", "Z3", "Z1", [0, 0, 0]))
    out.append(hom("Klein_first", "Klein", "Z2", [x >> 1 for x in range(4)]))
    out.append(hom("S3_sign", "S3", "Z2", [x % 2 for x in range(6)]))
    out.append(hom("Z2_into_S3", "Z2", "S3", [0, 1]))
    out.append(hom("Z3xZ2_p", "Z3xZ2", "Z2", [x % 2 for x in range(6)]))
    out.append(hom("Z2_into_Z3xZ2", "Z2", "Z3xZ2", [0, 1]))
    out.append(hom("Klein_second", "Klein", "Z2", [x & 1 for x in range(4)]))
    out.append(hom("Z2_into_Klein", "Z2", "Klein", [0, 1]))
    out.append(hom("M2_id", "M2", "M2", [0, 1]))
    out.append(hom("L5sq_p", "L5xL5", "L5", [x % 5 for x in range(25)]))
    out.append(hom("L5_diag", "L5", "L5xL5", [b * 5 + b for b in range(5)]))
    return "".join(out)


def spaces():
    out = ["# Plain finite spaces.\n"]
    for n in range(1, 7):
        out.append(algebra(f"P{n}", "Set", n, []))
    for n in range(1, 7):
        out.append(topology(f"D{n}", f"P{n}", [{x} for x in range(n)]))
        out.append(topology(f"I{n}", f"P{n}", []))
    out.append(topology("Sierpinski", "P2", [{1}]))
    out.append("\n# The spaces of the Top-not-regular counterexample.\n")
    out.append(algebra("CA", "Set", 4, []))
    out.append(algebra("CB", "Set", 3, []))
    out.append(algebra("CC", "Set", 3, []))
    out.append(topology("TA", "CA", [{0, 1}]))
    out.append(topology("TB", "CB", [{0, 2}]))
    out.append(topology("TC", "CC", []))
    out.append(hom("cf", "CA", "CC", [0, 1, 1, 2]))
    out.append(hom("cg", "CB", "CC", [0, 2, 2]))
    return "".join(out)


def topological():
    out = ["# Topologies on algebras.\n"]
    sizes = {f"Z{n}": n for n in range(1, 9)}
    sizes.update({"Klein": 4, "S3": 6, "Z3xZ2": 6})
    for name, n in sizes.items():
        out.append(topology(f"{name}_disc", name, [{x} for x in range(n)]))
        out.append(topology(f"{name}_ind", name, []))
    out.append(topology("Z4_coset", "Z4", [{0, 2}, {1, 3}]))
    out.append(topology("S3_coset", "S3", [{0, 2, 4}, {1, 3, 5}]))
    out.append(topology("Z3xZ2_prod", "Z3xZ2", [{0, 2, 4}, {1, 3, 5}]))
    out.append(topology("M2_sierpinski", "M2", [{1}]))
    out.append(topology("L5_disc", "L5", [{x} for x in range(5)]))
    out.append(topology("L5xL5_disc", "L5xL5", [{x} for x in range(25)]))
    out.append("\n# Points.\n")
    out.append("point S3pt { p = S3_sign; s = Z2_into_S3; }\n")
    out.append("point S3pt_disc { p = S3_sign; s = Z2_into_S3; topologies = S3_disc, Z2_disc; }\n")
    out.append("point S3pt_coset { p = S3_sign; s = Z2_into_S3; topologies = S3_coset, Z2_disc; }\n")
    out.append("point Prodpt { p = Z3xZ2_p; s = Z2_into_Z3xZ2; topologies = Z3xZ2_prod, Z2_disc; }\n")
    out.append("point Kleinpt { p = Klein_second; s = Z2_into_Klein; topologies = Klein_disc, Z2_disc; }\n")
    out.append("point L5pt { p = L5sq_p; s = L5_diag; topologies = L5xL5_disc, L5_disc; }\n")
    return "".join(out)


FILES = {
    "theories.ua": THEORIES,
    "algebras.ua": groups(),
    "homs.ua": maps(),
    "spaces.ua": spaces(),
    "topological.ua": topological(),
}

ORDER = ["theories.ua", "algebras.ua", "homs.ua", "spaces.ua", "topological.ua"]


def main():
    check_l5()
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT
    out.mkdir(parents=True, exist_ok=True)
    for name in ORDER:
        (out / name).write_text(FILES[name])


if __name__ == "__main__":
    main()
