#!/usr/bin/env python3
"""Generates the bundled toy corpus of CNF problems.

Usage: generate.py [output_dir]   (default: problems/ next to this script)

Output is deterministic: every family draws from its own seeded RNG.
"""

import random
import sys
from pathlib import Path


def cnf(name, role, lits):
    return f"cnf({name},{role},({' | '.join(lits)}))."


class Problem:
    def __init__(self, name, comment):
        self.name = name
        self.comment = comment
        self.lines = []

    def add(self, role, lits):
        self.lines.append(cnf(f"c{len(self.lines) + 1}", role, lits))

    def text(self):
        head = [f"% {self.name}: {self.comment}"]
        return "\n".join(head + self.lines) + "\n"


def chain(idx, length, fan, noise_chains, noise_len, rng):
    """Unary implication chain on c1 buried among noise chains on other constants."""
    p = Problem(f"chain_{idx:02d}", f"chain of {length}, {noise_chains} noise chains, fan {fan}")
    p.add("axiom", ["p0(c1)"])
    for i in range(length):
        p.add("axiom", [f"~p{i}(X)", f"p{i + 1}(X)"])
    consts = [f"c{k}" for k in range(2, 2 + fan)]
    for n in range(noise_chains):
        for c in rng.sample(consts, max(1, fan // 2)):
            p.add("axiom", [f"q{n}_0({c})"])
        for i in range(noise_len):
            p.add("axiom", [f"~q{n}_{i}(X)", f"q{n}_{i + 1}(X)"])
            if rng.random() < 0.3:
                p.add("axiom", [f"~q{n}_{i}(X)", f"q{(n + 1) % noise_chains}_{rng.randrange(noise_len)}(X)"])
    # A few noise rules feed the main chain from the noise side, off c1.
    for _ in range(2):
        p.add("axiom", [f"~q{rng.randrange(noise_chains)}_{rng.randrange(noise_len)}(X)", f"p{rng.randrange(length)}(g(X))"])
    p.add("negated_conjecture", [f"~p{length}(c1)"])
    return p


def reach(idx, nodes, extra_edges, components, rng):
    """Reachability in a directed graph with disconnected distractor components."""
    p = Problem(f"reach_{idx:02d}", f"path over {nodes} nodes x {components} components")
    p.add("axiom", ["~e(X,Y)", "path(X,Y)"])
    p.add("axiom", ["~path(X,Y)", "~e(Y,Z)", "path(X,Z)"])
    for comp in range(components):
        names = [f"n{comp}_{k}" for k in range(nodes)]
        for k in range(nodes - 1):
            p.add("axiom", [f"e({names[k]},{names[k + 1]})"])
        for _ in range(extra_edges):
            a, b = rng.sample(range(nodes), 2)
            p.add("axiom", [f"e({names[min(a, b)]},{names[max(a, b)]})"])
    p.add("negated_conjecture", [f"~path(n0_0,n0_{nodes - 1})"])
    return p


def trans(idx, size, rng):
    """Strict order chain with transitivity; the goal spans the whole chain."""
    p = Problem(f"trans_{idx:02d}", f"transitivity over {size} elements")
    p.add("axiom", ["~lt(X,Y)", "~lt(Y,Z)", "lt(X,Z)"])
    order = [f"a{k}" for k in range(size)]
    for k in range(size - 1):
        p.add("axiom", [f"lt({order[k]},{order[k + 1]})"])
    for _ in range(size // 2):
        a, b = rng.sample(range(size), 2)
        p.add("axiom", [f"le({order[a]},{order[b]})"])
    p.add("axiom", ["~le(X,Y)", "~le(Y,Z)", "le(X,Z)"])
    lo = rng.randrange(0, 2)
    p.add("negated_conjecture", [f"~lt({order[lo]},{order[size - 1]})"])
    return p


def peano(idx, a, b, noise, rng):
    """Addition over successor numerals with multiplication axioms as noise."""
    def num(n):
        t = "zero"
        for _ in range(n):
            t = f"s({t})"
        return t

    p = Problem(f"peano_{idx:02d}", f"{a} + {b} with {noise} noise facts")
    p.add("axiom", ["add(X,zero,X)"])
    p.add("axiom", ["~add(X,Y,Z)", "add(X,s(Y),s(Z))"])
    p.add("axiom", ["mul(X,zero,zero)"])
    p.add("axiom", ["~mul(X,Y,Z)", "~add(Z,X,W)", "mul(X,s(Y),W)"])
    for _ in range(noise):
        p.add("axiom", [f"add({num(rng.randrange(4))},{num(rng.randrange(4))},k{rng.randrange(50)})"])
    p.add("negated_conjecture", [f"~add({num(a)},{num(b)},{num(a + b)})"])
    return p


def pigeon(idx, holes):
    """Propositional pigeonhole: holes+1 pigeons, `holes` holes."""
    p = Problem(f"pigeon_{idx:02d}", f"pigeonhole {holes + 1} into {holes}")
    pigeons = holes + 1
    for i in range(pigeons):
        p.add("axiom", [f"in{i}_{j}" for j in range(holes)])
    for j in range(holes):
        for i in range(pigeons):
            for k in range(i + 1, pigeons):
                p.add("axiom", [f"~in{i}_{j}", f"~in{k}_{j}"])
    p.lines[-1] = p.lines[-1].replace(",axiom,", ",negated_conjecture,")
    return p


def random_3sat(idx, n_vars, n_clauses, rng):
    """Random 3-CNF over propositional atoms, kept only when unsatisfiable."""
    while True:
        clauses = []
        for _ in range(n_clauses):
            vs = rng.sample(range(n_vars), 3)
            clauses.append([(v, rng.random() < 0.5) for v in vs])
        if not satisfiable(n_vars, clauses):
            break
    p = Problem(f"sat3_{idx:02d}", f"unsatisfiable random 3-CNF, {n_vars} atoms, {n_clauses} clauses")
    for k, cl in enumerate(clauses):
        role = "negated_conjecture" if k == len(clauses) - 1 else "axiom"
        p.add(role, [("" if pos else "~") + f"x{v}" for v, pos in cl])
    return p


def satisfiable(n_vars, clauses):
    for bits in range(1 << n_vars):
        if all(any(((bits >> v) & 1) == pos for v, pos in cl) for cl in clauses):
            return True
    return False


def open_graph(idx, nodes, rng):
    """Satisfiable: the goal asks for a path into a component the edges never reach."""
    p = Problem(f"open_{idx:02d}", f"unreachable target among {nodes} nodes")
    p.add("axiom", ["~e(X,Y)", "path(X,Y)"])
    p.add("axiom", ["~path(X,Y)", "~path(Y,Z)", "path(X,Z)"])
    for k in range(nodes - 1):
        p.add("axiom", [f"e(m{k},m{k + 1})"])
    for _ in range(nodes // 2):
        a, b = sorted(rng.sample(range(nodes), 2))
        p.add("axiom", [f"e(m{a},m{b})"])
    p.add("axiom", ["e(z0,z1)"])
    p.add("negated_conjecture", [f"~path(m0,z1)"])
    return p


def build():
    problems = []
    rng = random.Random(2017)
    chain_params = [
        (6, 4, 3, 4), (8, 4, 4, 5), (10, 6, 4, 6), (12, 6, 5, 6), (14, 6, 6, 7),
        (16, 8, 6, 8), (18, 8, 7, 8), (20, 8, 8, 9), (24, 10, 8, 10), (28, 10, 9, 10),
        (32, 12, 10, 10), (36, 12, 12, 12),
    ]
    for k, (length, fan, chains, nlen) in enumerate(chain_params, 1):
        problems.append(chain(k, length, fan, chains, nlen, rng))
    rng = random.Random(7)
    reach_params = [(5, 2, 2), (6, 2, 3), (7, 3, 3), (8, 3, 4), (9, 4, 4), (10, 4, 5), (12, 5, 5), (14, 6, 6)]
    for k, (nodes, extra, comps) in enumerate(reach_params, 1):
        problems.append(reach(k, nodes, extra, comps, rng))
    rng = random.Random(11)
    for k, size in enumerate([5, 6, 7, 8, 10, 12], 1):
        problems.append(trans(k, size, rng))
    rng = random.Random(13)
    for k, (a, b, noise) in enumerate([(2, 3, 4), (3, 4, 8), (4, 6, 12), (6, 8, 20), (8, 10, 30), (9, 11, 36), (10, 13, 40), (12, 15, 48)], 1):
        problems.append(peano(k, a, b, noise, rng))
    for k, holes in enumerate([2, 3, 4], 1):
        problems.append(pigeon(k, holes))
    rng = random.Random(17)
    for k, (nv, nc) in enumerate([(6, 40), (7, 45), (8, 50), (9, 55), (10, 60)], 1):
        problems.append(random_3sat(k, nv, nc, rng))
    rng = random.Random(19)
    for k, nodes in enumerate([4, 6], 1):
        problems.append(open_graph(k, nodes, rng))
    return problems


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent / "problems"
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.p"):
        old.unlink()
    problems = build()
    for p in problems:
        (out / f"{p.name}.p").write_text(p.text())
    print(f"wrote {len(problems)} problems to {out}")


if __name__ == "__main__":
    main()
