"""Scratch: module-side standardization of the period matrix."""
from fractions import Fraction
from kugasatake.pipeline import Pipeline, paper_point
from kugasatake import periodmap as pm
from kugasatake import fieldlinalg as fl
from kugasatake.scalars import QuadExt, GaussQuad, render_gaussquad
from kugasatake.quaternion import Quat, QUAT_I, QUAT_J, QUAT_K

p = Pipeline()
pt = paper_point(p)
bundle = p.attributes()
J, J_elem, flipped = p.polarized_complex_structure(pt)
Eig = pm.eigenbasis(J)
Ms = pm.restrict_to_eigenspace(bundle.phire.N, Eig)
Q, kd = pm.solve_standardizer(Ms, bundle.phire.r_quats, chi_outer=True, conj_r=True)
frame = pm.PeriodFrame(Q, Eig)

# module coordinates of all 16 lattice generators: m_p = conj(z1_p) + conj(z2_p) j
# (c-outer: z1 = components 0..3, z2 = components 4..7)


def to_module(x):
    out = []
    for pp in range(4):
        z1, z2 = x[pp], x[4 + pp]
        out.append(Quat(z1.re, QuadExt(0) - z1.im, z2.re, QuadExt(0) - z2.im))
    return out


mods = [to_module(frame.x_vector(r)) for r in range(16)]

# right-action sanity: Phi(r) x should correspond to m * r
r2 = bundle.phire.r_quats[1]
x0 = frame.x_vector(0)
phi_r2 = pm.chi_target(r2.conjugate(), True)
lhs = to_module(fl.mat_vec(phi_r2, x0))
rhs = [m * r2 for m in mods[0]]
print('right action matches:', all(a == b for a, b in zip(lhs, rhs)))

# solve T_Q: Scal( sum_pq m_h[p] T[p][q] conj(m_l[q]) ) = ME[h][l]
ME = bundle.ME
units = (Quat(1), QUAT_I, QUAT_J, QUAT_K)
rows, rhs_v = [], []
for h in range(16):
    for l in range(16):
        row = []
        for pp in range(4):
            for qq in range(4):
                for u in units:
                    val = mods[h][pp] * u * mods[l][qq].conjugate()
                    row.append(QuadExt.coerce(val.w))
        rows.append(row)
        rhs_v.append(QuadExt.coerce(Fraction(ME[h][l])))
sol = fl.solve(rows, rhs_v)
print('T_Q solved:', sol is not None)
if sol is not None:
    TQ = [[Quat(*[sol[16 * pp + 4 * qq + c] for c in range(4)]) for qq in range(4)] for pp in range(4)]
    for row in TQ:
        print([str(v) for v in row])
