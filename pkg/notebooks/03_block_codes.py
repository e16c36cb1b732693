"""
Commuting block codes that factor the shift
===========================================

Each color i gives a sliding block code φ_i with a two-letter window.  The
induced maps on sequences commute, and composing all of them is the shift.
"""

from kshift import builtin, verify_factorization
from kshift.automata import EPWord, alpha, apply_code_ep, chl_recover, apply_code_word, phi_code
from kshift.markov import alphabet

g = builtin("flip2")
print(phi_code(g, 1).to_csv())

report = verify_factorization(g)
for line in report.checks:
    print(line)

###############################################################################
# Acting on an eventually periodic point.  ``alpha(g, y, n)`` applies S_1
# n_1 times, then S_2 n_2 times; α at (1,1) drops the first letter.

sigma = alphabet(g)
y = EPWord(sigma.parse_word("b·y,a·y"), sigma.parse_word("a·x,b·x"))
print("y          =", y)
print("S_1(y)     =", apply_code_ep(phi_code(g, 1), y))
print("S_2(y)     =", apply_code_ep(phi_code(g, 2), y))
print("α_(1,1)(y) =", alpha(g, y, (1, 1)))
print("shift(y)   =", y.shift(1))

###############################################################################
# Treating S_1 as a black box, the block code and its window length can be
# read back from input/output pairs.

recovered = chl_recover(g, lambda w: apply_code_word(phi_code(g, 1), w)[0], max_a=3)
print("recovered anticipation:", recovered.anticipation, "same table:", recovered.table == phi_code(g, 1).table)
