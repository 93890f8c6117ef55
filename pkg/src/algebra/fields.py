import functools
import logging

import galois
import numpy as np

from errors import NotPrime, SizeExceeded
from settings import MAX_FIELD_ORDER

logger = logging.getLogger(__name__)


class Field:
    """
    Finite field GF(p^k) with fixed (Conway) defining polynomial

    Elements travel as integers: the integer whose base-p digits are the
    coefficients of the polynomial representative, which is also the
    representation galois uses. Scalar helpers go through log/exp tables,
    bulk work (matrix products, ovoid points) through galois arrays.

    ...

    Attributes
    ----------
    characteristic : int
    degree : int
    order : int
        p^k

    gf : type
        the galois FieldArray class for this field

    primitive_element : int
        the generator behind the log/exp tables

    irreducible_poly : str
        defining polynomial, e.g. "x^3 + x + 1"

    Methods
    -------
    add(a, b), mul(a, b), inv(a), power(a, e):
        scalar arithmetic on integer representatives

    frobenius(a, j=1):
        a^(p^j)

    log(a), exp(i):
        discrete log and its inverse with respect to primitive_element

    array(values):
        galois array of the given integer representatives
    """

    def __init__(self, p, k):
        if not galois.is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise SizeExceeded(f"extension degree must be at least 1, got {k}")
        if p ** k > MAX_FIELD_ORDER:
            raise SizeExceeded(f"GF({p}^{k}) exceeds the supported field order {MAX_FIELD_ORDER}")

        self.__gf = galois.GF(p ** k)
        self.characteristic = p
        self.degree = k
        self.order = p ** k
        self.primitive_element = int(self.__gf.primitive_element)
        self.irreducible_poly = str(self.__gf.irreducible_poly)

        units = self.__gf.elements[1:]
        logs = np.asarray(units.log(), dtype=np.int64)
        self.__log = np.full(self.order, -1, dtype=np.int64)
        self.__log[units.view(np.ndarray).astype(np.int64)] = logs
        self.__exp = np.zeros(self.order - 1, dtype=np.int64)
        self.__exp[logs] = units.view(np.ndarray).astype(np.int64)
        logger.debug("built GF(%d^%d) over %s", p, k, self.irreducible_poly)


    @property
    def gf(self):
        return self.__gf


    def array(self, values):
        return self.__gf(np.asarray(values, dtype=np.int64))


    def elements(self):
        return list(range(self.order))


    def add(self, a, b):
        return int(self.__gf(a) + self.__gf(b))


    def neg(self, a):
        return int(-self.__gf(a))


    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.__exp[(self.__log[a] + self.__log[b]) % (self.order - 1)])


    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return int(self.__exp[(-self.__log[a]) % (self.order - 1)])


    def power(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse in a field")
            return 1 if e == 0 else 0
        return int(self.__exp[(self.__log[a] * e) % (self.order - 1)])


    def frobenius(self, a, j=1):
        return self.power(a, self.characteristic ** j)


    def log(self, a):
        if a == 0:
            raise ValueError("log of zero")
        return int(self.__log[a])


    def exp(self, i):
        return int(self.__exp[i % (self.order - 1)])


    def basis(self):
        """Additive F_p basis 1, α, …, α^(k-1) built from the primitive element."""
        return [self.exp(i) for i in range(self.degree)]


    def frobenius_holds(self):
        """x^(p^k) = x for every element; exhaustive."""
        return all(self.power(x, self.order) == x for x in range(self.order))


    def tables_consistent(self):
        return all(self.exp(self.log(x)) == x for x in range(1, self.order))


    def __repr__(self):
        return f"GF({self.characteristic}^{self.degree})"


@functools.lru_cache(maxsize=None)
def field(p, k=1):
    """
    Shared Field instance for GF(p^k).

    Params
    ------
    p:
        prime characteristic
    k:
        extension degree, p^k must stay within MAX_FIELD_ORDER
    """
    return Field(p, k)


def field_of_order(q):
    """Field with q elements; q must be a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = galois.factors(q)
    primes, exponents = factors
    if len(primes) != 1:
        raise NotPrime(f"{q} is not a prime power")
    return field(int(primes[0]), int(exponents[0]))
