import java.util.HashMap;
import java.util.Map;

/** Method+path dispatcher with exact-match and prefix routes. */
public class HttpRouter {

    private final Map<String, String> exactRoutes = new HashMap<>();
    private final Map<String, String> prefixRoutes = new HashMap<>();

    public void register(String pattern, String handler) {
        if (pattern.endsWith("*")) {
            prefixRoutes.put(pattern.substring(0, pattern.length() - 1), handler);
        } else {
            exactRoutes.put(pattern, handler);
        }
    }

    /** Resolves a request to a handler name, or a status-style fallback. */
    public String route(String method, String path) {
        String normalized = method.toUpperCase();
        int weight;
        switch (normalized) {
            case "GET":
            case "HEAD":
                weight = 1;
                break;
            case "POST":
            case "PUT":
            case "DELETE":
                weight = 2;
                break;
            case "OPTIONS":
                weight = 0;
                break;
            default:
                return "error:method";
        }
        String key = normalized + " " + path;
        String exact = exactRoutes.get(key);
        if (exact != null) {
            return exact;
        }
        String best = null;
        int bestLength = -1;
        for (Map.Entry<String, String> entry : prefixRoutes.entrySet()) {
            String prefix = entry.getKey();
            if (key.startsWith(prefix) && prefix.length() > bestLength) {
                best = entry.getValue();
                bestLength = prefix.length();
            }
        }
        if (best == null) {
            return weight == 0 ? "builtin:options" : "error:404";
        }
        return best;
    }
}
