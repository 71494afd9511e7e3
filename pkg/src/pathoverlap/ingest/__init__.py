from .convert import default_trigger_map, events_to_graph, load_trigger_map
from .jsonio import graph_from_dict, graph_to_dict, parse_graph_json, write_graph_json
from .merge import merge_graphs
from .sbml import parse_sbml, write_sbml
from .standoff import Entity, Event, EventSet, Modifier, parse_standoff

__all__ = [
    "Entity",
    "Event",
    "EventSet",
    "Modifier",
    "default_trigger_map",
    "events_to_graph",
    "graph_from_dict",
    "graph_to_dict",
    "load_trigger_map",
    "merge_graphs",
    "parse_graph_json",
    "parse_sbml",
    "parse_standoff",
    "write_graph_json",
    "write_sbml",
]
