// World <-> screen mapping.  World y points up, screen y points down; the
// transform is a uniform scale plus offset, so it is exactly invertible.

import { DomainPayload, Pt } from "./types.js";

export class Camera {
    scale = 1;
    ox = 0;
    oy = 0;

    fit(domain: DomainPayload, width: number, height: number, margin = 40): void {
        let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
        for (const [x, y] of domain.boundary) {
            minX = Math.min(minX, x); maxX = Math.max(maxX, x);
            minY = Math.min(minY, y); maxY = Math.max(maxY, y);
        }
        const w = maxX - minX || 1;
        const h = maxY - minY || 1;
        this.scale = Math.min((width - 2 * margin) / w, (height - 2 * margin) / h);
        this.ox = width / 2 - this.scale * (minX + w / 2);
        this.oy = height / 2 + this.scale * (minY + h / 2);
    }

    toScreen([x, y]: Pt): Pt {
        return [this.ox + this.scale * x, this.oy - this.scale * y];
    }

    toWorld([sx, sy]: Pt): Pt {
        return [(sx - this.ox) / this.scale, (this.oy - sy) / this.scale];
    }

    pan(dx: number, dy: number): void {
        this.ox += dx;
        this.oy += dy;
    }

    zoom(factor: number, around: Pt): void {
        const before = this.toWorld(around);
        this.scale *= factor;
        const after = this.toScreen(before);
        this.ox += around[0] - after[0];
        this.oy += around[1] - after[1];
    }
}
