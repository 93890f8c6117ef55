"""
Brute-force reference computations for the test suite.

Nothing here imports the library: groups are plain sets of image tuples
grown by breadth-first closure, so every answer is checkable by hand on
small degrees.
"""
from itertools import permutations


def mul(a, b):
    # a after b
    return tuple(a[i] for i in b)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def order_of(a):
    identity = tuple(range(len(a)))
    k, x = 1, a
    while x != identity:
        x = mul(a, x)
        k += 1
    return k


def closure(generators, degree):
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    generators = [tuple(g) for g in generators]
    while frontier:
        fresh = []
        for x in frontier:
            for g in generators:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return seen


def conjugacy_partition(group):
    remaining = set(group)
    classes = set()
    while remaining:
        x = remaining.pop()
        cls = {mul(mul(g, x), inv(g)) for g in group}
        remaining -= cls
        classes.add(frozenset(cls))
    return classes


def normal_closure(group, seeds, degree):
    conjugates = {mul(mul(g, s), inv(g)) for g in group for s in seeds}
    return closure(conjugates, degree)


def p_part(n, p):
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def is_subgroup_of_order(elements, order, degree):
    return len(elements) == order and closure(elements, degree) == set(elements)


def omega1(group, p, degree):
    return closure([x for x in group if order_of(x) == p], degree)


def p_residual(group, p, degree):
    return closure([x for x in group if order_of(x) % p], degree)


def symmetric_group(n):
    return set(permutations(range(n)))


def sylow_count_divides(group_order, p, count):
    # Sylow: the count is 1 mod p and divides the p'-part of the order
    return count % p == 1 and (group_order // p_part(group_order, p)) % count == 0
