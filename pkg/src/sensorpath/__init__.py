"""Power-distortion bounds and path planning for Gaussian sensor networks."""

from .model import (MetricSpec, NetworkParams, PowerAllocation, Scenario,
                    all_specs, build_network_params, bundled_scenario,
                    bundled_scenario_names, load_scenario, scenario_from_dict,
                    validate_scenario)
from .metrics import (BoundValue, evaluate, fr_lower, fr_upper,
                      mutual_info_bits, sr_lower, sr_upper)
from .power_alloc import (OptResult, allocation_broadcast_view, fr_bounds_opt,
                          fr_lower_opt, solve_lambda_fr, solve_lambda_sr,
                          sr_lower_opt, sr_upper_opt)
from .rate_distortion import (remote_rd_distortion, ru_eigen,
                              sufficient_stat_params, vector_rd_exact,
                              vector_rd_highrate)
from .planner import compare_paths, candidate_costs, greedy_plan

__version__ = "0.1.0"
