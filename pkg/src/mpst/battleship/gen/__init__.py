"""Generated session package for protocol BattleShips (module battleship).
"""

