"""The Battleship case study: game rules, a game server, a scripted bot,
and an interactive terminal player — all written against the generated
typestate APIs in :mod:`mpst.battleship.gen`."""
