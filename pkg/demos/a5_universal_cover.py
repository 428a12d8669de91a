# coding: utf-8

# # The universal regular cover of the A5 dessins
#
# Put the 19 regular A5 dessins side by side: the generators act block by
# block, one block per census class.  The group they generate covers every
# regular A5 dessin.  Its order is a big integer computed exactly by
# Schreier-Sims.

# In[1]:

import time
from fractions import Fraction

from dessins import construct_group, dessin_census, omega_orbits, ucover_record

c = dessin_census(construct_group("A5"))


# In[2]:

start = time.monotonic()
rec = ucover_record(c, regular=True)
print(f"degree {rec.degree}, computed in {time.monotonic() - start:.1f} s")
print("order =", rec.order)
print("order == 60**19:", rec.order == 60 ** 19)
print("type =", rec.type)


# # Genus
#
# The type is (30, 30, 30), so Riemann-Hurwitz gives
# genus = 1 + (1 - 3/30) |G| / 2 = 1 + 9|G|/20.

# In[3]:

print("genus =", rec.genus)
print(rec.genus == 1 + Fraction(9, 20) * rec.order)


# # One cover per T2-system

# In[4]:

ts = omega_orbits(c)
for i in range(ts.nu):
    part = ucover_record(c, i, ts)
    print(f"orbit {i}: order 60^{ts.orbits[i].length}? {part.order == 60 ** ts.orbits[i].length}  genus {part.genus}")
