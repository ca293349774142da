from src.netpart.graph.state import Component, ComponentDecomposition, CycleSet, SwitchState
from src.netpart.graph.components import UnionFind, connected_components
from src.netpart.graph.cycles import detect_cycles, fundamental_cycle_count, is_radial

__all__ = [
    "Component", "ComponentDecomposition", "CycleSet", "SwitchState", "UnionFind",
    "connected_components", "detect_cycles", "fundamental_cycle_count", "is_radial",
]
