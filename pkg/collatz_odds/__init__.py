"""
Collatz odd-sequence toolkit

Descending and ascending operations on positive odds, pattern families
modulo 2·3^n, cycle-equation search and origin estimates, all in exact
integer arithmetic.
"""
