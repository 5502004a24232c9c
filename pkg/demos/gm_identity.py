# Wronskians of free-particle seeds and the trigonometric Poschl-Teller family.
# Everything below is exact: coefficients are rationals, sin/cos live in
# Q[c, s] / (s^2 + c^2 - 1) and no floating point enters a certificate.
from darboux_wronskian import TrigPoly, gm_seed_selection, trig_expand, verify_gm_theorem, wronskian
from darboux_wronskian.chain import tdpt_exact
from darboux_wronskian.wronskian import potential_from_wronskian, ratio_equal

# sin(kx) and cos(kx) are stored as P(c) + s Q(c)
for k in range(1, 5):
    print(f"sin({k}x) =", trig_expand("sin", k).to_str(), "   cos(%dx) =" % k, trig_expand("cos", k).to_str())

# a two-seed Wronskian collapses to a monomial in s and c
w = wronskian([trig_expand("sin", 1), trig_expand("sin", 3)])
print("\nW(sin x, sin 3x) =", w.to_str())
s, c = TrigPoly.s(), TrigPoly.c()
print("equals -8 s^3 c:", w == s ** 3 * c * (-8))

# -2 (ln W)'' is the potential 6/sin^2 + 2/cos^2
v = potential_from_wronskian(w)
print("potential matches V(x; 2, 1):", ratio_equal(v, tdpt_exact(2, 1)))

# the seed selection for (m, n): sin x .. sin((m-n)x), then every other wavenumber
for m, n in [(1, 0), (3, 1), (5, 3), (2, 2)]:
    chain = gm_seed_selection(m, n)
    print(f"({m},{n}) seeds:", ", ".join(sd.label for sd in chain.seeds), chain.flags or "")

# certificates for a grid of parameters
print("\n m  n  ok   W / (s^a c^b)   bits   time")
for m in range(1, 7):
    for n in range(0, m + 1):
        cert = verify_gm_theorem(m, n)
        print(f"{m:2d} {n:2d}  {str(cert.identity_verified):5s}"
              f" {cert.scale_constants.get('wronskian_over_s^a_c^b', '-'):>14s}"
              f" {cert.coefficient_bits:6d}  {cert.wall_time * 1e3:6.1f} ms")

# a certificate is plain JSON
print(verify_gm_theorem(2, 1).to_json(indent=1))
