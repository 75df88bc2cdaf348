#!/usr/bin/env python3
"""1D-chain experiment: train the hardware-style layered ansatz against the
coupling-staggered XXZ model and compare with the classical bound and the
Lanczos ground energy."""

import argparse
import time

from bellsim.bell import build_chain_hamiltonian, classical_bound_chain
from bellsim.qsim import ground_energy
from bellsim.vqc import TrainConfig, build_chain_ansatz, train


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=11)
    ap.add_argument("--delta", type=float, default=2.0)
    ap.add_argument("--eps", type=float, default=0.95)
    ap.add_argument("--layers", type=int, default=12)
    ap.add_argument("--iters", type=int, default=1200)
    ap.add_argument("--lr", type=float, default=0.05)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--init", choices=("ones", "random"), default="ones")
    args = ap.parse_args()

    h = build_chain_hamiltonian(args.n, args.delta, args.eps)
    bc = classical_bound_chain(args.n, args.delta)
    ground = ground_energy(h, args.n) if args.n <= 24 else float("nan")
    print(f"n={args.n} delta={args.delta} eps={args.eps}: beta_C = {bc}, ground = {ground:.4f}")

    circuit = build_chain_ansatz(args.n, args.layers)
    cfg = TrainConfig(
        max_iters=args.iters, learning_rate=args.lr, seed=args.seed, init=args.init,
        early_stop_bound=bc, early_stop_patience=5,
    )
    t0 = time.time()
    res = train(circuit, h, cfg)
    status = "VIOLATION" if res.final_energy < bc else "no violation"
    print(
        f"E = {res.final_energy:.4f} after {res.records[-1].iteration} iterations "
        f"[{status}]  ({time.time()-t0:.0f}s)"
    )


if __name__ == "__main__":
    main()
