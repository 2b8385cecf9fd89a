import java.util.ArrayDeque;
import java.util.Deque;

/** Resolves {@code .} and {@code ..} segments in slash-separated paths. */
public class PathNormalizer {

    /**
     * Collapses redundant segments without touching the filesystem.
     * Leading {@code ..} segments of relative paths are preserved.
     */
    public static String normalize(String path) {
        boolean absolute = path.startsWith("/");
        Deque<String> stack = new ArrayDeque<>();
        int start = 0;
        do {
            int slash = path.indexOf('/', start);
            String segment = slash < 0 ? path.substring(start) : path.substring(start, slash);
            if (segment.equals("..")) {
                if (!stack.isEmpty() && !stack.peekLast().equals("..")) {
                    stack.removeLast();
                } else if (!absolute) {
                    stack.addLast("..");
                }
            } else if (!segment.isEmpty() && !segment.equals(".")) {
                stack.addLast(segment);
            }
            start = slash + 1;
        } while (start > 0 && start <= path.length());
        StringBuilder joined = new StringBuilder(absolute ? "/" : "");
        boolean first = true;
        for (String segment : stack) {
            if (!first) {
                joined.append('/');
            }
            joined.append(segment);
            first = false;
        }
        if (joined.length() == 0) {
            return absolute ? "/" : ".";
        }
        return joined.toString();
    }

    static boolean isHidden(String path) {
        int slash = path.lastIndexOf('/');
        String name = slash < 0 ? path : path.substring(slash + 1);
        return name.startsWith(".") && !name.equals(".") && !name.equals("..");
    }
}
