/**
 * Typed client for the pitchrank HTTP service.
 *
 * Every number shown in the UI comes straight from these payloads. The
 * client never recomputes analytics; it only transports and types them.
 */

// ---------------------------------------------------------------------------
// Payload types
// ---------------------------------------------------------------------------

/** Dimensions of the pitch tessellation used by the service. */
export interface GridDims {
  /** Number of horizontal bands (y axis). */
  rows: number;
  /** Number of vertical bands (x axis). */
  cols: number;
}

/** Response of GET /roles: the fitted role model and service configuration. */
export interface RolesInfo {
  /** Number of roles the model settled on. */
  k: number;
  /** Role centroids as [x, y] pitch coordinates, one per role. */
  centroids: [number, number][];
  /** Mean silhouette of the chosen clustering. */
  silhouette: number;
  /** Mean silhouette per candidate k, keyed by the candidate as a string. */
  kSweep: Record<string, number>;
  /** Silhouette margin below which a point counts as hybrid. */
  deltaS: number;
  /** Tessellation dimensions; the UI adopts these instead of assuming any. */
  grid: GridDims;
  /** Digest of the model bundle backing this service instance. */
  bundleDigest: string;
}

/** One row of a role ranking. */
export interface RankingEntry {
  /** 1-based position in the ranking. */
  rank: number;
  /** Player identifier. */
  playerId: number;
  /** Display name. */
  name: string;
  /** Time-decayed mean rating. */
  rBar: number;
}

/** Response of GET /rankings/{role}. */
export interface RankingPayload {
  /** Role index the ranking is for. */
  role: number;
  /** Minimum matches required for a player to appear. */
  minMatches: number;
  /** Ranked rows, best first. */
  entries: RankingEntry[];
}

/** One rated match inside a player profile. */
export interface MatchLine {
  /** Match identifier. */
  matchId: number;
  /** Performance rating for the match. */
  r: number;
  /** Goal-adjusted rating for the match. */
  rStar: number;
  /** Roles the player covered in the match. */
  roles: number[];
  /** Dominant role in the match, or null when roles are unavailable. */
  primaryRole: number | null;
}

/** Response of GET /players/{id}. */
export interface PlayerProfile {
  /** Player identifier. */
  playerId: number;
  /** Display name. */
  name: string;
  /** Time-decayed mean rating over all matches. */
  rBar: number;
  /** Time-decayed mean of goal-adjusted ratings. */
  rBarStar: number;
  /** Number of rated matches. */
  matchCount: number;
  /** Per-match rating lines in chronological order. */
  matches: MatchLine[];
  /** Distinct roles observed across the player's matches. */
  roles: number[];
  /** Versatility in [0, 1], or null when no role data exists. */
  versatility: number | null;
  /** Share of matches per role, indexed by role, or null without role data. */
  roleShares: number[] | null;
  /** Row-major zone activity shares (rows x cols), or null without events. */
  heatmap: number[] | null;
}

/** Body of POST /search. Exactly one of zones or weights must be present. */
export interface SearchRequest {
  /** Selected zone indices for a binary query. */
  zones?: number[];
  /** Per-zone weights for a weighted query. */
  weights?: number[];
  /** Tessellation the zone indices refer to; must match the service grid. */
  grid: GridDims;
  /** Maximum number of rows to return. */
  top_k: number;
}

/** One row of a search result. */
export interface SearchHit {
  /** Player identifier. */
  playerId: number;
  /** Display name. */
  name: string;
  /** Retrieval score: zone support times mean rating. */
  z: number;
  /** Share of the player's activity inside the queried zones. */
  s: number;
  /** Time-decayed mean rating. */
  rBar: number;
  /** Row-major zone activity shares for the player, or null. */
  heatmap: number[] | null;
}

/** Response of POST /search. */
export interface SearchPayload {
  /** Tessellation the result heatmaps refer to. */
  grid: GridDims;
  /** Hits in server ranking order. The UI must not re-sort them. */
  results: SearchHit[];
}

/** Response of GET /stats: corpus-level rating statistics. */
export interface StatsPayload {
  /** Number of player-match ratings. */
  n: number;
  /** Mean rating. */
  mean: number;
  /** Rating standard deviation. */
  std: number;
  /** Threshold two standard deviations above the mean. */
  excellenceThreshold: number;
  /** Share of ratings above the excellence threshold. */
  shareExcellent: number;
  /** Share of ratings within two standard deviations of the mean. */
  shareWithin2Std: number;
  /** Matches folded into the snapshot. */
  matchesProcessed: number;
  /** Distinct players rated. */
  playersRated: number;
}

/** Error envelope the service wraps every failure in. */
export interface ApiErrorBody {
  error: {
    /** Stable machine-readable code, e.g. "unknown_player". */
    code: string;
    /** Human-readable description. */
    message: string;
  };
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/** Error thrown for any non-2xx service response. */
export class ApiError extends Error {
  /** HTTP status code of the response. */
  readonly status: number;
  /** Machine-readable code from the error envelope, or "http_<status>". */
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

/** True when an error is the service saying a player id does not exist. */
export function isPlayerNotFound(err: unknown): boolean {
  return err instanceof ApiError && err.status === 404 && err.code === "unknown_player";
}

// ---------------------------------------------------------------------------
// Client
// ---------------------------------------------------------------------------

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * HTTP client for the pitchrank service.
 *
 * Holds at most one in-flight search: starting a new search aborts the
 * previous request, and the superseded call resolves to null so stale
 * results are never rendered.
 */
export class ScoutClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;
  private inflightSearch: AbortController | null = null;

  /**
   * @param baseUrl service origin, e.g. "" for same-origin or "http://host:8000".
   * @param fetchImpl fetch implementation; injectable for tests.
   */
  constructor(baseUrl = "", fetchImpl: FetchLike = (input, init) => fetch(input, init)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  /** Fetch the role model and grid configuration. */
  roles(): Promise<RolesInfo> {
    return this.request<RolesInfo>("/roles");
  }

  /** Fetch the ranking for one role. */
  rankings(role: number, limit?: number): Promise<RankingPayload> {
    const query = limit === undefined ? "" : `?limit=${limit}`;
    return this.request<RankingPayload>(`/rankings/${role}${query}`);
  }

  /** Fetch one player's profile. Throws ApiError with code "unknown_player" on 404. */
  player(playerId: number): Promise<PlayerProfile> {
    return this.request<PlayerProfile>(`/players/${playerId}`);
  }

  /** Fetch corpus-level rating statistics. */
  stats(): Promise<StatsPayload> {
    return this.request<StatsPayload>("/stats");
  }

  /**
   * Run a zone search, cancelling any search still in flight.
   *
   * @returns the payload, or null when this call was superseded by a newer one.
   */
  async search(body: SearchRequest): Promise<SearchPayload | null> {
    this.inflightSearch?.abort();
    const controller = new AbortController();
    this.inflightSearch = controller;
    try {
      const payload = await this.request<SearchPayload>("/search", {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal: controller.signal,
      });
      return controller.signal.aborted ? null : payload;
    } catch (err) {
      if (controller.signal.aborted) {
        return null;
      }
      throw err;
    } finally {
      if (this.inflightSearch === controller) {
        this.inflightSearch = null;
      }
    }
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      let code = `http_${response.status}`;
      let message = `request failed with status ${response.status}`;
      try {
        const body = (await response.json()) as Partial<ApiErrorBody>;
        if (body.error) {
          code = body.error.code ?? code;
          message = body.error.message ?? message;
        }
      } catch {
        // Non-JSON error body; keep the generic code and message.
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }
}
