"""
Rebuilding a 2-dimensional configuration from its diagonal
==========================================================

A path in a 2-graph is an N^2 array of letters, but it is pinned down by
its diagonal.  We rebuild the array two ways, with the block codes and by
factoring the composite of the diagonal letters, and check they agree.
"""

from kshift import builtin
from kshift.automata import EPWord, alpha
from kshift.markov import alphabet
from kshift.reconstruction import psi_window, reconstruct_window, verify_covariance, window_membership
from kshift.shifts import restrict_diagonal

g = builtin("flip2")
sigma = alphabet(g)
y = EPWord(sigma.parse_word("a·y,b·x"), sigma.parse_word("a·x"))

w = psi_window(g, y, 3)
print("window on B_3 (rows n_2, columns n_1):")
for n2 in range(4):
    print("  ", " ".join(f"{w[(n1, n2)].name:>4}" for n1 in range(4)))

print("diagonal gives y back:", restrict_diagonal(w) == y.prefix(4))
print("factorization route agrees:", reconstruct_window(g, y.prefix(4), 3) == w)

###############################################################################
# A window is admissible only if it equals the reconstruction of its own
# diagonal, so overwriting one off-diagonal cell breaks membership.

broken = w.replace((1, 0), sigma.by_name("a·x") if w[(1, 0)] != sigma.by_name("a·x") else sigma.by_name("b·y"))
print("member:", window_membership(g, w), "after edit:", window_membership(g, broken))

###############################################################################
# Translating the array by p is the same as applying α_p to the diagonal.

for p in [(1, 0), (0, 1), (2, 1)]:
    print(p, verify_covariance(g, y, p, 2), alpha(g, y, p))
