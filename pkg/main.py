"""
File: main.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

if __name__ == "__main__":
    import uvicorn

    from mirrorsim.config import settings

    uvicorn.run(
        "mirrorsim.main:app",
        host=settings.HOST,
        port=settings.PORT,
        workers=settings.WORKERS,
        reload=settings.DEBUG,
    )
