"""
Choosing a window length from the autocorrelation
=================================================

Each signal gets its own window length: the first lag above 1 where the
sample ACF has a local maximum that clears the white-noise band.
"""
# %%
# Two periodic signals with different periods and shapes.
from wvcgraph import detect_period, gen_ig_train, gen_sine
from wvcgraph.synthetic import default_config

cfg = default_config()
sine, ig = gen_sine(cfg), gen_ig_train(cfg)

for s in (sine, ig):
    p = detect_period(s)
    print(f"{s.label:5s} tau={p.tau:4d} beta={p.beta:3d} rho[tau]={p.acf.rho[p.tau]:.3f} "
          f"threshold={p.acf.threshold:.4f}")

# %%
# Without a significant peak the window collapses to a single sample, which
# makes the later normalization a plain global z-score.
import numpy as np

ramp = np.linspace(0.0, 1.0, 500)
print("ramp:", detect_period(ramp).tau, "detected:", detect_period(ramp).detected)

# %%
# Heavier noise is a known weak spot for pulse trains: the ACF trough between
# pulses is flat, and noise ripples there can pass the test first.
noisy = gen_ig_train(default_config(noise_sigma=0.05, seed=0))
print("noisy ig tau:", detect_period(noisy).tau)
