"""Monte Carlo price simulation under geometric Brownian motion."""

import math
import random

INITIAL_PRICE = 100.0
DRIFT = 0.05
VOLATILITY = 0.2
HORIZON_YEARS = 1.0


def _terminal_price(rng: random.Random, num_steps: int) -> float:
    dt = HORIZON_YEARS / num_steps
    price = INITIAL_PRICE
    for _ in range(num_steps):
        shock = rng.gauss(0.0, 1.0)
        price *= math.exp((DRIFT - 0.5 * VOLATILITY**2) * dt + VOLATILITY * math.sqrt(dt) * shock)
    return price


def monte_carlo_simulation(num_paths: int, num_steps: int, seed: int) -> float:
    """Average terminal price over ``num_paths`` simulated paths."""
    if num_paths <= 0 or num_steps <= 0:
        return INITIAL_PRICE
    rng = random.Random(seed)
    total = 0.0
    for _ in range(num_paths):
        total += _terminal_price(rng, num_steps)
    return total / num_paths
