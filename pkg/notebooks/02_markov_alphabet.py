"""
The Markov alphabet of a k-graph
================================

Letters are the morphisms of degree (1,...,1).  Two letters may follow one
another when the source of the first is the range of the second, which
gives a 0/1 transition matrix and a shift of finite type.
"""

import numpy as np

from kshift import builtin, product_kgraph
from kshift.markov import alphabet, language, markov_forbidden_patterns, transition_matrix

for name in ["flip2", "delta2", "cycle"]:
    g = builtin(name)
    A = transition_matrix(g)
    print(f"{name}: letters {alphabet(g).names()}")
    print(A.bits.astype(int))

###############################################################################
# The product of the two-letter loop with a 2-cycle has two vertices.  Its
# transition matrix is no longer full, and the number of admissible words
# grows like the spectral radius of A.

g = product_kgraph(builtin("two_letter"), builtin("cycle"))
A = transition_matrix(g).bits.astype(float)
print("letters:", alphabet(g).names())
print("spectral radius:", max(abs(np.linalg.eigvals(A))))
print("|L_m| for m = 0..4:", [len(language(g, m)) for m in range(5)])
print("forbidden two-letter patterns:", len(markov_forbidden_patterns(transition_matrix(g))))
print(transition_matrix(g).to_csv())
