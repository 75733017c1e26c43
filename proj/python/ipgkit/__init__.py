# Copyright 2026 The ipgkit Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Equilibria of integer programming games.

Rationals are returned as fractions.Fraction. Profiles are lists with one
entry per player: a strategy tuple for pure profiles, or a list of
(strategy, probability) pairs for mixed ones.
"""

from ipgkit._ipgkit import (
    Instance,
    IpgkitError,
    approximation_scenarios,
    best_response,
    enumerate_mixed_ne,
    enumerate_pure_ne,
    generate_cng,
    improve,
    load_instance,
    parse_instance,
    payoff,
    price_of_stability,
    solve,
)

__all__ = [
    "Instance",
    "IpgkitError",
    "approximation_scenarios",
    "best_response",
    "enumerate_mixed_ne",
    "enumerate_pure_ne",
    "generate_cng",
    "improve",
    "load_instance",
    "parse_instance",
    "payoff",
    "price_of_stability",
    "solve",
]
