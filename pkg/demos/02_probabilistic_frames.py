"""Probabilistic frames: weighted atoms, optimal bounds, W2 distance.

A probability measure with atoms y_i and weights w_i is a probabilistic
frame iff S = sum w_i y_i y_i^T is positive definite; its extreme
eigenvalues are the optimal bounds. The 2-Wasserstein metric compares two
such measures through an exact transport plan.

Also shown: the coordinate decay sequence f(n) = integral <b_n, y>^2 dmu.
At any finite truncation it sums to the second moment, but it vanishes
beyond the ambient dimension, so no single positive constant can sit
below it for all n. That is the finite-dimensional shadow of the fact
that infinite-dimensional frame measures cannot live on the Hilbert
space itself and need a genuinely larger carrier space.
"""
import numpy as np

import framemeasures as fm

# uniform measure on the Mercedes-Benz directions is a tight probabilistic frame
mb = fm.mercedes_benz_frame()
mu = fm.DiscreteMeasure.uniform(mb.vectors)
s = fm.prob_frame_operator(mu)
print("S_mu for the uniform MB measure:")
print(s)
bounds = fm.measure_frame_bounds(mu)
print(f"bounds: A = {bounds.lower:.6f}, B = {bounds.upper:.6f}, tight = {bounds.is_tight()}")
print(f"second moment = {fm.second_moment(mu):.6f} (= trace of S_mu)")

# a point mass spans nothing: not a probabilistic frame
delta = fm.DiscreteMeasure.point_mass([1.0, 0.0])
print("\npoint mass bounds:", fm.measure_frame_bounds(delta))

# exact optimal transport between two small measures
nu = fm.DiscreteMeasure.uniform([[0.0, 0.0], [1.0, 0.0]])
rho = fm.DiscreteMeasure.uniform([[0.0, 0.0], [2.0, 0.0]])
dist, plan = fm.wasserstein2(nu, rho)
print(f"\nW2(nu, rho) = {dist:.6f}  (W2^2 = {dist**2:.6f})")
print("optimal plan (rows = nu atoms, cols = rho atoms):")
print(plan.matrix)

# analysis/synthesis against the measure
x = np.array([1.0, 1.0])
table = fm.prob_analysis(mu, x)
print(f"\nanalysis table of {x} over the atoms: {table}")
print("synthesis of that table:", fm.prob_synthesis(mu, table), "= S_mu x =", s @ x)

# coordinate decay: energies die beyond the ambient dimension
rng = np.random.default_rng(1)
wild = fm.DiscreteMeasure.normalized(rng.normal(size=(5, 3)), rng.random(5) + 0.2)
seq = fm.lower_bound_decay(wild, 10)
print("\ndecay sequence f(1..10):", np.round(seq, 4))
print(f"sum = {seq.sum():.12f} vs M2^2 = {fm.second_moment(wild):.12f}")
print("every f(n) with n > 3 is exactly 0 -> no uniform positive lower bound exists")
