"""Cartan's test on three tiny systems.

A Frobenius system passes, a contact form has no integral surfaces at all,
and a pair of 2-forms in four dimensions shows a flag that is not ordinary.
"""

from cartan_eds import (CoframeSplit, Flag, GeneratorSet, IntegralElement, StructureDifferential,
                        cartan_verdict, close, is_integral, wedge)
from cartan_eds.exterior import Coframe, vector


def show(title, report):
    print(title)
    print("  characters   ", report.c)
    print("  sum / tangent", report.sum_c, report.tangent_codim)
    print("  verdict      ", report.verdict, *report.notes)
    print()


cf = Coframe.standard(3)
w1, w2, w3 = (cf.basis(i) for i in (1, 2, 3))

# dw3 = 0: the planes w3 = 0 foliate, so the flag in that plane is ordinary
frob = close(GeneratorSet(cf, [w3]))
split = CoframeSplit([w1, w2], [w3])
show("Frobenius, w3 = 0", cartan_verdict(Flag([vector(1, 0, 0), vector(0, 1, 0)]), frob, split))

# dw3 = w1 ^ w2: closing the ideal adds w1 ^ w2, which kills every 2-plane inside w3 = 0
contact = close(GeneratorSet(cf, [w3], StructureDifferential(cf, {3: wedge(w1, w2)})))
print("contact ideal after closure:", [g.pretty() for g in contact.generators])
plane = IntegralElement([vector(1, 0, 0), vector(0, 1, 0)])
print("is the plane w3 = 0 integral?", is_integral(plane, contact))
show("contact, one-dimensional flag", cartan_verdict(Flag([vector(1, 0, 0)]), contact))

# two 2-forms on R^4: the flag along e1, e2 carries more equations than the characters count
cf4 = Coframe.standard(4)
a = [cf4.basis(i) for i in range(1, 5)]
gs = GeneratorSet(cf4, [wedge(a[0], a[2]), wedge(a[1], a[3])])
show("w1^w3, w2^w4 along e1, e2",
     cartan_verdict(Flag([vector(1, 0, 0, 0), vector(0, 1, 0, 0)]), gs))
