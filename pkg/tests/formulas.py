"""Reference invariants transcribed as plain text.

Syntax: signed terms, optional integer coefficient, factors ``m<digits>``
with an optional ``^power``. Every index digit is one exponent.
"""

# 2D, order 2, degree 1 (rotation)
ROT_2D_O2 = "m20 + m02"

# 2D, order 5, degree 2 (rotation); three independent quadratic invariants
ROT_2D_O5_DEG2 = [
    "3m23^2 - 4m41m23 + 3m32^2 - 4m14m32 + m05m41 + m14m50",
    "m14m32 - m05m41 - m05m23 - m14m50 + m23m41 - m32m50 + m14^2 + m41^2",
    "15m05m23 + 5m05m41 + 25m14m32 + 5m14m50 + 25m23m41 + 15m32m50 + 3m05^2 + 3m50^2",
]

# 2D affine over m20..m02 squared, denominator m00^4
AFF_2D_O2_DEG2 = "m20m02 - m11^2"

# 2D affine over order-2 x (order-5)^2 products, denominator m00^9
AFF_2D_O2_O5 = (
    "3m20m23^2 - 2m11m23m32 - 4m02m41m23 + 3m02m32^2 - 4m14m20m32"
    " + m02m14m50 - m05m11m50 + m05m20m41 + 3m11m14m41"
)

# 3D affine, degree 4 in order-3 moments, denominator m000^8
AFF_3D_O3_DEG4 = (
    "-m300m012^2m120 + m012^2m210^2 + m300m012m021m111 - m012m021m201m210"
    " - m012m102m120m210 + m030m300m012m102 - 2m012m111^2m210 + 3m012m111m120m201"
    " - m030m012m201^2 - m300m021^2m102 + m021^2m201^2 + 3m021m102m111m210"
    " - 2m021m111^2m201 - m021m102m120m201 + m003m300m021m120 - m003m021m210^2"
    " + m102^2m120^2 - m030m102^2m210 - 2m102m111^2m120 + m030m102m111m201"
    " + m003m111m120m210 - m003m030m300m111 - m003m120^2m201 + m003m030m201m210 + m111^4"
)

# 4D affine, degree 4 in order-2 moments, denominator m0000^6
AFF_4D_O2_DEG4 = (
    "m0011^2m1100^2 - m0200m2000m0011^2 + 2m2000m0011m0101m0110"
    " - 2m0011m0101m1010m1100 - 2m0011m0110m1001m1100 + 2m0200m0011m1001m1010"
    " + m0101^2m1010^2 - m0020m2000m0101^2 - 2m0101m0110m1001m1010 + m0110^2m1001^2"
    " + 2m0020m0101m1001m1100 + 2m0002m0110m1010m1100 + m0002m0020m0200m2000"
    " - m0020m0200m1001^2 - m0002m0200m1010^2 - m0002m2000m0110^2 - m0002m0020m1100^2"
)

# 4D rotation, degree 2 in order-3 moments
ROT_4D_O3_DEG2 = [
    "m0012^2 - m0012m0210 - m0012m2010 - m0030m0012 + m0021^2 - m0021m0201"
    " - m0021m2001 - m0003m0021 + m0102^2 - m0102m0120 - m0102m2100 - m0300m0102"
    " + 3m0111^2 + m0120^2 - m0120m2100 - m0300m0120 + m0201^2 - m0201m2001 - m0003m0201"
    " + m0210^2 - m0210m2010 - m0030m0210 + m1002^2 - m1002m1020 - m1002m1200"
    " - m3000m1002 + 3m1011^2 + m1020^2 - m1020m1200 - m3000m1020 + 3m1101^2 + 3m1110^2"
    " + m1200^2 - m3000m1200 + m2001^2 - m0003m2001 + m2010^2 - m0030m2010 + m2100^2"
    " - m0300m2100",
    "3m0003m0021 + 3m0012m0030 + 3m0003m0201 + 3m0012m0210 + 3m0021m0201"
    " + 3m0102m0120 + 3m0030m0210 + 3m0102m0300 + 3m0120m0300 + 3m0003m2001 + 3m0012m2010"
    " + 3m0021m2001 + 3m1002m1020 + 3m0030m2010 + 3m0102m2100 + 3m0201m2001 + 3m1002m1200"
    " + 3m0120m2100 + 3m0210m2010 + 3m1020m1200 + 3m0300m2100 + 3m1002m3000 + 3m1020m3000"
    " + 3m1200m3000 + m0003^2 + m0030^2 - 3m0111^2 + m0300^2 - 3m1011^2 - 3m1101^2"
    " - 3m1110^2 + m3000^2",
]
