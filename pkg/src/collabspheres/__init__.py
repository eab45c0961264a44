"""CollabSpheres: a multi-strategy recommender over a research-object corpus.

The package combines user-based collaborative filtering, social-graph and
keyword content-based recommenders into a weighted hybrid, infers pack
recommendations from resource-level ones, and exposes everything through
sphere sessions, a hypermedia HTTP service and an operator CLI.
"""

__version__ = "0.1.0"
