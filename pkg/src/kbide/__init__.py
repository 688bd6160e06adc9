"""kbide: a web IDE and inference engine for a small typed first-order
knowledge-base language.

Programs consist of four block kinds: vocabularies declare types,
predicates, and constants; theories state sentences over a vocabulary;
structures give finite domains and a three-valued interpretation; and
procedures script what to do with them. The engine grounds theories
over structures and answers model expansion, propagation, and unsat
core queries; the server wraps everything in a REST + WebSocket API.
"""

__version__ = "0.1.0"
