"""Graphs to images to node selections: community-aware rendering,
pluggable selectors, Monte Carlo spread estimation, and adaptive removal
loops, with deterministic heuristics standing in for remote models."""

__version__ = "0.1.0"

from .graph import (Graph, EdgeListError, UNREACHABLE, load_edge_list,
                    load_edge_list_path, build_graph, remove_nodes,
                    connected_components, largest_component_size,
                    shortest_distance, has_cycle)
from .centrality import (CentralityScores, PageRankDivergence, degree,
                         betweenness, closeness, closeness_all, pagerank,
                         collective_influence, collective_influence_all)
from .communities import CommunityAssignment, detect_communities, merge_communities
from .layout import (LayoutResult, AdjustmentParams, fr_layout, circle_layout,
                     grid_layout, centroids, adjust_positions)
from .render import (RenderSpec, FullLabels, PartialLabels, ImageArtifact,
                     DEFAULT_PALETTE, render, rasterize)
from .diffusion import DiffusionModel, SpreadEstimate, simulate_ic, simulate_lt, expected_spread
from .prompts import AgentProfile, default_agents, build_im_prompt, build_dismantle_prompt
from .parsing import (ReplyParseError, ValidationReport, parse_node_list,
                      parse_single_node, validate_seed_set, validation_ratios,
                      heuristic_select, aggregate_attempts)
from .backends import (SelectorRequest, SelectorResponse, ReplyCache,
                       ScriptedBackend, MllmBackend, BackendError, AuthError,
                       RateLimitError, query)
from .localsearch import LocalSearchResult, local_search
from .pipelines import (PipelineError, IMRun, DismantleTrace, AttemptRecord,
                        prepare_image, run_im, dismantle, hd_step, hci_step,
                        HDSelector, HCISelector, CentralitySelector, ChatSelector,
                        HeuristicSeedBackend, robustness_R, auc)
from .generators import ba_graph, er_graph, ws_graph
from .benchtasks import (GenSpec, TaskInstance, TASK_KINDS, standard_gen_spec,
                         generate, make_task, encode_text, decode_adjacency,
                         grade, run_benchmark, OracleBackend)
