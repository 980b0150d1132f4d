from protolib import *
import time
print("=== RRD quick: seeds 1..4, max_steps=20000 ===", flush=True)
for seed in range(1, 5):
    t0=time.time()
    s = psro_zero_sum(seed, "rrd", lam=0.05, alpha=1e-3, max_steps=20000)
    ok = s["closed"] and s["final_regret"] <= 0.05 and s["iters"] <= 20
    print(f"seed {seed}: ok={ok} iters={s['iters']} final_r={s['final_regret']:.4f} closed={s['closed']} rd_fallbacks={s['rd_fail']} ({time.time()-t0:.1f}s)", flush=True)
