"""Minimal 2-SAT solver over an implication graph.

Literals are encoded as integers: variable v appears positively as
2*v and negatively as 2*v + 1, so negation is `lit ^ 1`.  A clause
(a OR b) contributes the implications not-a => b and not-b => a.
Satisfiability and a model come out of one iterative Tarjan SCC pass:
the formula is satisfiable iff no variable shares a component with its
negation, and assigning each variable the truth value of whichever
literal's component comes later in topological order (smaller Tarjan
component id) yields a model.
"""

from __future__ import annotations

from typing import Iterable, Optional


def negate(lit: int) -> int:
    return lit ^ 1


def solve(num_vars: int, clauses: Iterable[tuple[int, int]]) -> Optional[list[bool]]:
    """Return a satisfying assignment as a list of bools, or None."""
    n = 2 * num_vars
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in clauses:
        adj[a ^ 1].append(b)
        adj[b ^ 1].append(a)

    index = [0] * n  # 1-based discovery index, 0 = unvisited
    low = [0] * n
    comp = [-1] * n
    on_stack = bytearray(n)
    scc_stack: list[int] = []
    counter = 1
    ncomp = 0

    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, edge_i = work[-1]
            if edge_i == 0:
                index[v] = low[v] = counter
                counter += 1
                scc_stack.append(v)
                on_stack[v] = 1
            if edge_i < len(adj[v]):
                work[-1] = (v, edge_i + 1)
                u = adj[v][edge_i]
                if not index[u]:
                    work.append((u, 0))
                elif on_stack[u]:
                    if index[u] < low[v]:
                        low[v] = index[u]
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    while True:
                        u = scc_stack.pop()
                        on_stack[u] = 0
                        comp[u] = ncomp
                        if u == v:
                            break
                    ncomp += 1

    model = []
    for v in range(num_vars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        model.append(comp[2 * v] < comp[2 * v + 1])
    return model
