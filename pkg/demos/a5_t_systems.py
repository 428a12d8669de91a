# coding: utf-8

# # T2-systems of A5
#
# Nielsen moves act on generating pairs and descend to the census classes.
# Their orbits are the T2-systems.  For A5 there are two, of lengths 9 and 10,
# separated by the order of the commutator [x, y].

# In[1]:

from dessins import construct_group, dessin_census, omega_action_order, omega_orbits
from dessins.tsystems import MINIMAL_MOVES

c = dessin_census(construct_group("A5"))
ts = omega_orbits(c)
print("number of orbits:", ts.nu)


# In[2]:

for o in ts.orbits:
    types = sorted({tuple(sorted(c.classes[k].type)) for k in o.members})
    print(f"orbit {o.orbit_id}: length {o.length}, commutator order {o.commutator_order}, types {types}")


# # Fewer moves, same orbits
#
# A smaller generating set of moves gives the same partition.

# In[3]:

print(omega_orbits(c, MINIMAL_MOVES).partition() == ts.partition())


# # The permutation group induced on the classes
#
# It is the full product of symmetric groups on the two orbits: 9! * 10!.

# In[4]:

print(omega_action_order(c))
