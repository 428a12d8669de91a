# coding: utf-8

# # Regular dessins with automorphism group A5
#
# A regular dessin with group G is a generating pair (x, y) of G taken up to
# automorphisms of G.  This notebook counts them for A5 two ways: by orbits of
# Aut(A5) on generating pairs, and by Moebius inversion over the subgroup
# lattice.  Both routes must give the same answer.

# In[1]:

from collections import Counter

from dessins import construct_group, dessin_census, enumerate_subgroups, moebius_table


# # The group and its subgroup lattice

# In[2]:

G = construct_group("A5")
L = enumerate_subgroups(G)
M = moebius_table(L)
print(G.order, "elements,", len(L.nodes), "subgroups")


# # The census
#
# `r` is the number of regular dessins; `phi2` is the number of generating
# pairs.  Since Aut(A5) = S5 acts freely on generating pairs, phi2 = 120 r.

# In[3]:

c = dessin_census(G, L, M)
print("r =", c.r, "  Moebius r =", c.moebius_r)
print("phi2 =", c.phi2, "  Moebius phi2 =", c.phi2_moebius, "  |Aut| =", c.aut_order)


# # Genus and type
#
# Each class has a type (l, m, n), the orders of x, y and (xy)^-1, and a genus
# from the Riemann-Hurwitz formula.

# In[4]:

for (t, g), k in sorted(Counter((tuple(sorted(cl.type)), cl.genus) for cl in c.classes).items(),
                        key=lambda kv: kv[0][1]):
    print(f"type {t}  genus {g:2d}  classes {k}")


# In[5]:

print(c.genus_histogram())
