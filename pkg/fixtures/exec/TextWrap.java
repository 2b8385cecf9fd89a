/** Greedy line wrapper over a fixed paragraph; prints one wrapped line per row. */
public class TextWrap {

    public static void main(String[] args) {
        String text = "the quick brown fox jumps over the lazy dog while the cat naps";
        System.out.print(wrap(text, 18));
    }

    static String wrap(String text, int width) {
        String[] words = text.split(" ");
        StringBuilder out = new StringBuilder();
        int lineLen = 0;
        for (String word : words) {
            if (lineLen == 0) {
                out.append(word);
                lineLen = word.length();
            } else if (lineLen + 1 + word.length() <= width) {
                out.append(' ').append(word);
                lineLen += 1 + word.length();
            } else {
                out.append('\n').append(word);
                lineLen = word.length();
            }
        }
        out.append('\n');
        return out.toString();
    }
}
