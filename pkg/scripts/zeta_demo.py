"""Regularized zeta functionals on monomial tails (exact, q = 3)."""
import math

from gspbessel.zeta import functional_matrix, monomial_tail, regularized, regularized_functional

for d in range(6):
    f = monomial_tail(d, sign=-1)
    value = regularized_functional(f, 1, {1: d + 1})
    print(f"d={d}  Z/L = {regularized(f, 1, {1: d + 1})}   I = {value}   (-1)^d d! = {(-1) ** d * math.factorial(d)}")
for n in range(1, 6):
    print(f"n={n}  rank of the I^(1..n) matrix = {functional_matrix(n).rank()}")
